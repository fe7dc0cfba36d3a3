#include "rangewalk/cover.hpp"

#include <algorithm>
#include <cmath>

#include <boost/multiprecision/cpp_int.hpp>

#include "rangewalk/probes.hpp"

namespace rangewalk {

namespace {

using boost::multiprecision::cpp_int;

class BitWriter {
 public:
  void put(bool bit) {
    if (bits_ % 8 == 0) bytes_.push_back(0);
    if (bit) bytes_.back() = static_cast<char>(bytes_.back() | (0x80 >> (bits_ % 8)));
    ++bits_;
  }
  std::string take() { return std::move(bytes_); }

 private:
  std::string bytes_;
  std::uint64_t bits_ = 0;
};

class BitReader {
 public:
  explicit BitReader(std::string_view bytes) : bytes_(bytes) {}
  bool get() {
    if (pos_ >= bytes_.size() * 8) throw CodeError("range code payload truncated");
    const bool bit = (static_cast<unsigned char>(bytes_[pos_ / 8]) >> (7 - pos_ % 8)) & 1U;
    ++pos_;
    return bit;
  }
  // Padding after the last field must be zero and shorter than a byte.
  void finish() const {
    if (bytes_.size() * 8 - pos_ >= 8) throw CodeError("range code has trailing bytes");
    for (std::uint64_t p = pos_; p < bytes_.size() * 8; ++p) {
      if ((static_cast<unsigned char>(bytes_[p / 8]) >> (7 - p % 8)) & 1U) throw CodeError("nonzero padding");
    }
  }

 private:
  std::string_view bytes_;
  std::uint64_t pos_ = 0;
};

void put_varint(std::string& out, std::uint64_t v) {
  while (v >= 0x80) {
    out.push_back(static_cast<char>((v & 0x7f) | 0x80));
    v >>= 7;
  }
  out.push_back(static_cast<char>(v));
}

std::uint64_t take_varint(std::string_view& in) {
  std::uint64_t v = 0;
  for (unsigned shift = 0; shift < 64; shift += 7) {
    if (in.empty()) throw CodeError("range code header truncated");
    const auto byte = static_cast<unsigned char>(in.front());
    in.remove_prefix(1);
    v |= static_cast<std::uint64_t>(byte & 0x7f) << shift;
    if ((byte & 0x80) == 0) return v;
  }
  throw CodeError("varint too long");
}

cpp_int radix_product(const std::vector<std::uint32_t>& radix) {
  cpp_int p = 1;
  for (auto s : radix) p *= s;
  return p;
}

std::uint32_t bits_for(const cpp_int& product) {
  if (product <= 1) return 0;
  return static_cast<std::uint32_t>(boost::multiprecision::msb(cpp_int(product - 1)) + 1);
}

// Replays the center choices from the origin: index i picks x_{i+1} in the
// sphere around x_i.
std::vector<VertexId> replay_centers(const GraphOracle& g, const RangeCode& code) {
  std::vector<VertexId> centers{code.origin};
  for (auto idx : code.center_index) {
    const auto s = sphere(g, centers.back(), code.r);
    if (idx >= s.size()) throw CodeError("center index outside the sphere");
    centers.push_back(s[idx]);
  }
  return centers;
}

}  // namespace

std::vector<VertexId> cover_path(const GraphOracle& g, const VertexSet& a, const VertexId& o) {
  const auto root = a.index_of(o);
  if (!root) throw GraphError("cover path origin is not in the set");
  std::vector<bool> seen(a.size(), false);
  struct Frame {
    std::size_t index;
    std::vector<VertexId> nbrs;
    std::size_t next = 0;
  };
  std::vector<Frame> stack;
  stack.push_back({*root, g.neighbors(o)});
  seen[*root] = true;
  std::vector<VertexId> path{o};
  std::size_t remaining = a.size() - 1;
  while (remaining > 0 && !stack.empty()) {
    auto& top = stack.back();
    std::optional<std::size_t> found;
    while (top.next < top.nbrs.size()) {
      const auto idx = a.index_of(top.nbrs[top.next++]);
      if (idx && !seen[*idx]) {
        found = idx;
        break;
      }
    }
    if (found) {
      seen[*found] = true;
      --remaining;
      path.push_back(a[*found]);
      stack.push_back({*found, g.neighbors(a[*found])});
    } else {
      stack.pop_back();
      if (!stack.empty()) path.push_back(a[stack.back().index]);
    }
  }
  if (remaining > 0) throw GraphError("set is not connected");
  return path;
}

std::size_t CoverSequence::l() const { return static_cast<std::size_t>(std::count(unfilled.begin(), unfilled.end(), true)); }

CoverSequence f_r(const GraphOracle& g, const VertexSet& a, const VertexId& o, std::uint32_t r) {
  if (r < 1) throw GraphError("cover radius must be at least 1");
  const auto path = cover_path(g, a, o);
  CoverSequence seq;
  seq.r = r;
  std::vector<bool> covered(a.size(), false);
  std::size_t uncovered = a.size();
  VertexSet current;
  auto add_center = [&](const VertexId& x) {
    current = ball(g, x, r);
    bool inside = true;
    for (const auto& y : current) {
      const auto idx = a.index_of(y);
      if (!idx) {
        inside = false;
      } else if (!covered[*idx]) {
        covered[*idx] = true;
        --uncovered;
      }
    }
    seq.centers.push_back(x);
    seq.unfilled.push_back(!inside);
  };
  add_center(o);
  for (std::size_t t = 1; t < path.size() && uncovered > 0; ++t) {
    if (!current.contains(path[t])) add_center(path[t]);
  }
  return seq;
}

std::uint32_t RangeCode::center_bits() const { return bits_for(radix_product(radix)); }

std::uint64_t RangeCode::payload_bits() const {
  std::uint64_t bits = center_bits() + unfilled.size();
  for (const auto& m : membership) bits += m.size();
  return bits;
}

double RangeCode::length_nats() const { return static_cast<double>(payload_bits()) * std::log(2.0); }

RangeCode encode_range(const GraphOracle& g, const VertexSet& a, const VertexId& o, std::uint32_t r,
                       std::uint64_t n) {
  const auto seq = f_r(g, a, o, r);
  RangeCode code;
  code.n = n;
  code.r = r;
  code.origin = o;
  code.unfilled = seq.unfilled;
  for (std::size_t i = 1; i < seq.centers.size(); ++i) {
    const auto s = sphere(g, seq.centers[i - 1], r);
    const auto idx = s.index_of(seq.centers[i]);
    if (!idx) throw CodeError("cover center is not on the previous sphere");
    code.center_index.push_back(static_cast<std::uint32_t>(*idx));
    code.radix.push_back(static_cast<std::uint32_t>(s.size()));
  }
  for (std::size_t i = 0; i < seq.centers.size(); ++i) {
    if (!seq.unfilled[i]) continue;
    std::vector<bool> bits;
    for (const auto& y : ball(g, seq.centers[i], r)) bits.push_back(a.contains(y));
    code.membership.push_back(std::move(bits));
  }
  return code;
}

VertexSet decode_range(const GraphOracle& g, const RangeCode& code) {
  const auto centers = replay_centers(g, code);
  if (centers.size() != code.unfilled.size()) throw CodeError("center count does not match the unfilled flags");
  std::vector<VertexId> items;
  std::size_t next_map = 0;
  for (std::size_t i = 0; i < centers.size(); ++i) {
    const auto b = ball(g, centers[i], code.r);
    if (!code.unfilled[i]) {
      items.insert(items.end(), b.begin(), b.end());
      continue;
    }
    if (next_map >= code.membership.size()) throw CodeError("missing membership bitmap");
    const auto& bits = code.membership[next_map++];
    if (bits.size() != b.size()) throw CodeError("membership bitmap has the wrong length");
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (bits[j]) items.push_back(b[j]);
    }
  }
  if (next_map != code.membership.size()) throw CodeError("extra membership bitmaps");
  return VertexSet(std::move(items));
}

std::string serialize(const GraphOracle& g, const RangeCode& code) {
  std::string out;
  const cpp_int product = radix_product(code.radix);
  const auto width = bits_for(product);
  put_varint(out, code.n);
  put_varint(out, code.r);
  put_varint(out, code.k());
  put_varint(out, code.l());
  put_varint(out, width);
  g.encode(code.origin, out);

  cpp_int value = 0;
  cpp_int scale = 1;
  for (std::size_t i = 0; i < code.center_index.size(); ++i) {
    value += scale * code.center_index[i];
    scale *= code.radix[i];
  }
  BitWriter bits;
  for (std::uint32_t b = width; b-- > 0;) bits.put(boost::multiprecision::bit_test(value, b));
  for (bool u : code.unfilled) bits.put(u);
  for (const auto& m : code.membership) {
    for (bool b : m) bits.put(b);
  }
  out += bits.take();
  return out;
}

RangeCode deserialize(const GraphOracle& g, std::string_view bytes) {
  RangeCode code;
  code.n = take_varint(bytes);
  const auto r = take_varint(bytes);
  const auto k = take_varint(bytes);
  const auto l = take_varint(bytes);
  const auto width = take_varint(bytes);
  if (r < 1 || r > 0xffffffffULL) throw CodeError("bad radius in range code");
  if (k < 1 || l > k) throw CodeError("bad K/L in range code");
  code.r = static_cast<std::uint32_t>(r);
  try {
    code.origin = g.decode_prefix(bytes);
  } catch (const GraphError& e) {
    throw CodeError(std::string("bad origin in range code: ") + e.what());
  }

  BitReader bits(bytes);
  cpp_int value = 0;
  for (std::uint64_t b = 0; b < width; ++b) {
    value <<= 1;
    if (bits.get()) value |= 1;
  }
  // The radices are the sphere sizes along the centers, so the digits are
  // peeled off while the centers are rebuilt.
  VertexId at = code.origin;
  std::vector<VertexId> centers{at};
  for (std::uint64_t i = 1; i < k; ++i) {
    const auto s = sphere(g, at, code.r);
    if (s.empty()) throw CodeError("empty sphere while decoding centers");
    const auto idx = static_cast<std::uint32_t>(value % s.size());
    value /= s.size();
    code.center_index.push_back(idx);
    code.radix.push_back(static_cast<std::uint32_t>(s.size()));
    at = s[idx];
    centers.push_back(at);
  }
  if (value != 0 || bits_for(radix_product(code.radix)) != width) throw CodeError("center integer out of range");
  for (std::uint64_t i = 0; i < k; ++i) code.unfilled.push_back(bits.get());
  if (static_cast<std::uint64_t>(std::count(code.unfilled.begin(), code.unfilled.end(), true)) != l) {
    throw CodeError("unfilled flags disagree with L");
  }
  for (std::uint64_t i = 0; i < k; ++i) {
    if (!code.unfilled[i]) continue;
    const auto size = ball(g, centers[i], code.r).size();
    std::vector<bool> m(size);
    for (std::size_t j = 0; j < size; ++j) m[j] = bits.get();
    code.membership.push_back(std::move(m));
  }
  bits.finish();
  return code;
}

CoverConstants cover_constants(const GraphOracle& g, std::uint32_t r, const std::vector<VertexId>& centers) {
  CoverConstants c;
  auto take = [&](const VertexId& x) {
    c.s_r = std::max(c.s_r, sphere_size(g, x, r));
    c.b_r = std::max(c.b_r, ball(g, x, r).size());
  };
  if (g.vertex_transitive() || centers.empty()) {
    take(g.origin());
  } else {
    for (const auto& x : centers) take(x);
  }
  return c;
}

double code_length_bound(double k, double l, const CoverConstants& c) {
  const double log2 = std::log(2.0);
  const double s = static_cast<double>(std::max<std::size_t>(c.s_r, 1));
  return k * (std::log(s) + log2) + static_cast<double>(c.b_r) * l * log2;
}

}  // namespace rangewalk
