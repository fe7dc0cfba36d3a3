#include "rangewalk/graph.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

#include "rangewalk/families.hpp"

namespace rangewalk {

namespace {

std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

void put_u32(std::string& out, std::uint32_t v) {
  out.push_back(static_cast<char>(v >> 24));
  out.push_back(static_cast<char>(v >> 16));
  out.push_back(static_cast<char>(v >> 8));
  out.push_back(static_cast<char>(v));
}

std::uint32_t take_u32(std::string_view& in) {
  if (in.size() < 4) throw GraphError("vertex encoding truncated");
  std::uint32_t v = 0;
  for (int i = 0; i < 4; ++i) v = (v << 8) | static_cast<unsigned char>(in[i]);
  in.remove_prefix(4);
  return v;
}

void put_address(std::string& out, const TreeAddress& a) {
  put_u32(out, a.depth());
  for (std::uint32_t i = 0; i < a.depth(); ++i) out.push_back(static_cast<char>(a.digit(i)));
}

TreeAddress take_address(std::string_view& in) {
  const std::uint32_t depth = take_u32(in);
  if (in.size() < depth) throw GraphError("vertex encoding truncated");
  TreeAddress a;
  for (std::uint32_t i = 0; i < depth; ++i) {
    const auto d = static_cast<unsigned char>(in[i]);
    if (d > 3) throw GraphError("tree digit out of range");
    a = a.child(d);
  }
  in.remove_prefix(depth);
  return a;
}

bool digits_below(const TreeAddress& a, unsigned first_arity, unsigned arity) {
  for (std::uint32_t i = 0; i < a.depth(); ++i) {
    if (a.digit(i) >= (i == 0 ? first_arity : arity)) return false;
  }
  return true;
}

std::uint32_t parse_u32(std::string_view s) {
  std::uint32_t v = 0;
  const auto* end = s.data() + s.size();
  auto [p, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc{} || p != end) throw GraphError("bad integer parameter: " + std::string(s));
  return v;
}

}  // namespace

// --- TreeAddress -----------------------------------------------------------

unsigned TreeAddress::digit(std::uint32_t level) const {
  const auto word = words_[level / kDigitsPerWord];
  const unsigned shift = 62 - 2 * (level % kDigitsPerWord);
  return static_cast<unsigned>((word >> shift) & 3U);
}

TreeAddress TreeAddress::child(unsigned d) const {
  TreeAddress c = *this;
  if (depth_ % kDigitsPerWord == 0) c.words_.push_back(0);
  const unsigned shift = 62 - 2 * (depth_ % kDigitsPerWord);
  c.words_.back() |= static_cast<std::uint64_t>(d & 3U) << shift;
  ++c.depth_;
  return c;
}

TreeAddress TreeAddress::parent() const {
  if (depth_ == 0) throw GraphError("root has no parent");
  TreeAddress p = *this;
  --p.depth_;
  if (p.depth_ % kDigitsPerWord == 0) {
    p.words_.pop_back();
  } else {
    const unsigned shift = 62 - 2 * (p.depth_ % kDigitsPerWord);
    p.words_.back() &= ~(std::uint64_t{3} << shift);
  }
  return p;
}

std::size_t TreeAddress::hash() const {
  std::uint64_t h = mix64(depth_ + 0x9e3779b97f4a7c15ULL);
  for (auto w : words_) h = mix64(h ^ w);
  return static_cast<std::size_t>(h);
}

std::strong_ordering operator<=>(const TreeAddress& a, const TreeAddress& b) {
  if (auto c = a.depth_ <=> b.depth_; c != 0) return c;
  return std::lexicographical_compare_three_way(a.words_.begin(), a.words_.end(), b.words_.begin(),
                                                b.words_.end());
}

std::strong_ordering operator<=>(const StretchedPoint& a, const StretchedPoint& b) {
  if (auto c = a.branch <=> b.branch; c != 0) return c;
  return a.offset <=> b.offset;
}

std::strong_ordering operator<=>(const ConcatPoint& a, const ConcatPoint& b) {
  if (auto c = a.tree <=> b.tree; c != 0) return c;
  return a.address <=> b.address;
}

std::size_t VertexHash::operator()(const VertexId& v) const {
  return std::visit(
      [](const auto& p) -> std::size_t {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, LatticePoint>) {
          std::uint64_t h = 0x51ed270b27u;
          for (auto c : p.x) h = mix64(h ^ static_cast<std::uint32_t>(c));
          return static_cast<std::size_t>(h);
        } else if constexpr (std::is_same_v<T, TreeAddress>) {
          return p.hash();
        } else if constexpr (std::is_same_v<T, StretchedPoint>) {
          return static_cast<std::size_t>(mix64(p.branch.hash() ^ (std::uint64_t{p.offset} << 32)));
        } else {
          return static_cast<std::size_t>(mix64(p.address.hash() + p.tree * 0x632be59bd9b4e019ULL));
        }
      },
      v);
}

std::strong_ordering compare_vertices(const VertexId& a, const VertexId& b) {
  if (a.index() != b.index()) return a.index() <=> b.index();
  return std::visit(
      [&b](const auto& p) -> std::strong_ordering {
        using T = std::decay_t<decltype(p)>;
        return p <=> std::get<T>(b);
      },
      a);
}

// --- GraphOracle -----------------------------------------------------------

void GraphOracle::neighbors(const VertexId& v, std::vector<VertexId>& out) const {
  out.clear();
  raw_neighbors(v, out);
  if (!std::is_sorted(out.begin(), out.end(), VertexLess{})) std::sort(out.begin(), out.end(), VertexLess{});
}

std::vector<VertexId> GraphOracle::neighbors(const VertexId& v) const {
  std::vector<VertexId> out;
  neighbors(v, out);
  return out;
}

int GraphOracle::degree(const VertexId& v) const {
  std::vector<VertexId> out;
  raw_neighbors(v, out);
  return static_cast<int>(out.size());
}

void GraphOracle::encode(const VertexId& v, std::string& out) const {
  out.push_back(static_cast<char>(family()));
  encode_fields(v, out);
}

std::string GraphOracle::encode(const VertexId& v) const {
  std::string out;
  encode(v, out);
  return out;
}

VertexId GraphOracle::decode_prefix(std::string_view& bytes) const {
  if (bytes.empty() || static_cast<std::uint8_t>(bytes[0]) != static_cast<std::uint8_t>(family())) {
    throw GraphError("vertex encoding has wrong family tag for " + name());
  }
  bytes.remove_prefix(1);
  VertexId v = decode_fields(bytes);
  if (!contains(v)) throw GraphError("decoded vertex is not in " + name());
  return v;
}

VertexId GraphOracle::decode(std::string_view bytes) const {
  VertexId v = decode_prefix(bytes);
  if (!bytes.empty()) throw GraphError("trailing bytes after vertex encoding");
  return v;
}

// --- Lattice ---------------------------------------------------------------

LatticeGraph::LatticeGraph(int dimension) : dim_(dimension) {
  if (dimension < 1 || dimension > kMaxLatticeDim) {
    throw GraphError("lattice dimension must be in [1, " + std::to_string(kMaxLatticeDim) + "]");
  }
}

std::string LatticeGraph::name() const { return "lattice:" + std::to_string(dim_); }

bool LatticeGraph::contains(const VertexId& v) const {
  const auto* p = std::get_if<LatticePoint>(&v);
  if (p == nullptr) return false;
  for (int i = dim_; i < kMaxLatticeDim; ++i) {
    if (p->x[i] != 0) return false;
  }
  return true;
}

// Canonical order: -e_0, ..., -e_{d-1}, +e_{d-1}, ..., +e_0.
void LatticeGraph::raw_neighbors(const VertexId& v, std::vector<VertexId>& out) const {
  const auto& p = std::get<LatticePoint>(v);
  for (int i = 0; i < dim_; ++i) {
    LatticePoint q = p;
    --q.x[i];
    out.emplace_back(q);
  }
  for (int i = dim_ - 1; i >= 0; --i) {
    LatticePoint q = p;
    ++q.x[i];
    out.emplace_back(q);
  }
}

void LatticeGraph::encode_fields(const VertexId& v, std::string& out) const {
  const auto& p = std::get<LatticePoint>(v);
  for (int i = 0; i < dim_; ++i) put_u32(out, static_cast<std::uint32_t>(p.x[i]) ^ 0x80000000U);
}

VertexId LatticeGraph::decode_fields(std::string_view& bytes) const {
  LatticePoint p;
  for (int i = 0; i < dim_; ++i) p.x[i] = static_cast<std::int32_t>(take_u32(bytes) ^ 0x80000000U);
  return p;
}

// --- Binary tree -----------------------------------------------------------

BinaryTreeGraph::BinaryTreeGraph(std::uint32_t max_depth) : max_depth_(max_depth) {}

std::string BinaryTreeGraph::name() const {
  return is_infinite() ? std::string("tree") : "finite-tree:" + std::to_string(max_depth_);
}

int BinaryTreeGraph::degree_bound() const { return max_depth_ == 1 ? 2 : 3; }

bool BinaryTreeGraph::contains(const VertexId& v) const {
  const auto* a = std::get_if<TreeAddress>(&v);
  if (a == nullptr) return false;
  if (!is_infinite() && a->depth() > max_depth_) return false;
  return digits_below(*a, 2, 2);
}

int BinaryTreeGraph::degree(const VertexId& v) const {
  const auto& a = std::get<TreeAddress>(v);
  const int up = a.is_root() ? 0 : 1;
  const int down = (!is_infinite() && a.depth() == max_depth_) ? 0 : 2;
  return up + down;
}

void BinaryTreeGraph::raw_neighbors(const VertexId& v, std::vector<VertexId>& out) const {
  const auto& a = std::get<TreeAddress>(v);
  if (!a.is_root()) out.emplace_back(a.parent());
  if (is_infinite() || a.depth() < max_depth_) {
    out.emplace_back(a.child(0));
    out.emplace_back(a.child(1));
  }
}

void BinaryTreeGraph::encode_fields(const VertexId& v, std::string& out) const {
  put_address(out, std::get<TreeAddress>(v));
}

VertexId BinaryTreeGraph::decode_fields(std::string_view& bytes) const { return take_address(bytes); }

// --- Stretched tree --------------------------------------------------------

StretchedTreeGraph::StretchedTreeGraph(unsigned root_children) : root_children_(root_children) {
  if (root_children < 1 || root_children > 4) throw GraphError("stretched tree root_children must be in [1, 4]");
}

std::string StretchedTreeGraph::name() const { return "stretched:" + std::to_string(root_children_); }

bool StretchedTreeGraph::is_branch(const VertexId& v) {
  const auto* p = std::get_if<StretchedPoint>(&v);
  return p != nullptr && p->offset == 0;
}

std::uint32_t StretchedTreeGraph::branch_level(const VertexId& v) {
  if (!is_branch(v)) throw GraphError("not a branch vertex of the stretched tree");
  return std::get<StretchedPoint>(v).branch.depth();
}

bool StretchedTreeGraph::contains(const VertexId& v) const {
  const auto* p = std::get_if<StretchedPoint>(&v);
  if (p == nullptr) return false;
  if (!digits_below(p->branch, root_children_, 2)) return false;
  if (p->offset == 0) return true;
  const auto level = p->branch.depth();
  return level >= 1 && p->offset < path_length(level);
}

int StretchedTreeGraph::degree(const VertexId& v) const {
  const auto& p = std::get<StretchedPoint>(v);
  if (p.offset != 0) return 2;
  return p.branch.is_root() ? static_cast<int>(root_children_) : 3;
}

void StretchedTreeGraph::raw_neighbors(const VertexId& v, std::vector<VertexId>& out) const {
  const auto& p = std::get<StretchedPoint>(v);
  if (p.offset == 0) {
    const auto level = p.branch.depth();
    if (level >= 1) out.emplace_back(StretchedPoint{p.branch, path_length(level) - 1});
    const unsigned arity = level == 0 ? root_children_ : 2;
    for (unsigned d = 0; d < arity; ++d) out.emplace_back(StretchedPoint{p.branch.child(d), 1});
    return;
  }
  const auto len = path_length(p.branch.depth());
  if (p.offset == 1) {
    out.emplace_back(StretchedPoint{p.branch.parent(), 0});
  } else {
    out.emplace_back(StretchedPoint{p.branch, p.offset - 1});
  }
  out.emplace_back(StretchedPoint{p.branch, p.offset + 1 == len ? 0 : p.offset + 1});
}

void StretchedTreeGraph::encode_fields(const VertexId& v, std::string& out) const {
  const auto& p = std::get<StretchedPoint>(v);
  put_address(out, p.branch);
  put_u32(out, p.offset);
}

VertexId StretchedTreeGraph::decode_fields(std::string_view& bytes) const {
  StretchedPoint p;
  p.branch = take_address(bytes);
  p.offset = take_u32(bytes);
  return p;
}

// --- Concatenated trees ----------------------------------------------------

ConcatenatedTreesGraph::ConcatenatedTreesGraph(std::vector<std::uint32_t> depths) : depths_(std::move(depths)) {
  if (depths_.empty()) depths_ = {16, 64, 256};
  if (depths_.front() < 1) throw GraphError("concatenated tree depths must be >= 1");
  for (std::size_t i = 1; i < depths_.size(); ++i) {
    if (depths_[i] <= depths_[i - 1]) throw GraphError("concatenated tree depths must be strictly increasing");
  }
}

std::uint32_t ConcatenatedTreesGraph::tree_depth(std::uint32_t tree) const {
  if (tree == 0) throw GraphError("tree indices start at 1");
  if (tree <= depths_.size()) return depths_[tree - 1];
  std::uint64_t a = depths_.back();
  for (std::size_t k = depths_.size(); k < tree && a < 0x40000000ULL; ++k) a *= 4;
  return static_cast<std::uint32_t>(std::min<std::uint64_t>(a, 0xffffffffULL));
}

std::string ConcatenatedTreesGraph::name() const {
  std::string s = "concatenated:";
  for (std::size_t i = 0; i < depths_.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(depths_[i]);
  }
  return s;
}

bool ConcatenatedTreesGraph::contains(const VertexId& v) const {
  const auto* p = std::get_if<ConcatPoint>(&v);
  if (p == nullptr || p->tree == 0) return false;
  return p->address.depth() <= tree_depth(p->tree) && digits_below(p->address, 2, 2);
}

int ConcatenatedTreesGraph::degree(const VertexId& v) const {
  const auto& p = std::get<ConcatPoint>(v);
  const int down = p.address.depth() < tree_depth(p.tree) ? 2 : 0;
  if (!p.address.is_root()) return 1 + down;
  return down + (p.tree > 1 ? 1 : 0) + 1;
}

void ConcatenatedTreesGraph::raw_neighbors(const VertexId& v, std::vector<VertexId>& out) const {
  const auto& p = std::get<ConcatPoint>(v);
  if (p.address.is_root()) {
    if (p.tree > 1) out.emplace_back(tree_root(p.tree - 1));
  } else {
    out.emplace_back(ConcatPoint{p.tree, p.address.parent()});
  }
  if (p.address.depth() < tree_depth(p.tree)) {
    out.emplace_back(ConcatPoint{p.tree, p.address.child(0)});
    out.emplace_back(ConcatPoint{p.tree, p.address.child(1)});
  }
  if (p.address.is_root()) out.emplace_back(tree_root(p.tree + 1));
}

void ConcatenatedTreesGraph::encode_fields(const VertexId& v, std::string& out) const {
  const auto& p = std::get<ConcatPoint>(v);
  put_u32(out, p.tree);
  put_address(out, p.address);
}

VertexId ConcatenatedTreesGraph::decode_fields(std::string_view& bytes) const {
  ConcatPoint p;
  p.tree = take_u32(bytes);
  p.address = take_address(bytes);
  return p;
}

// --- Small finite graphs ---------------------------------------------------

SmallGraph::SmallGraph(Family kind, std::uint32_t size) : kind_(kind), size_(size) {
  switch (kind) {
    case Family::path:
      if (size < 2) throw GraphError("path needs at least 2 vertices");
      break;
    case Family::cycle:
      if (size < 3) throw GraphError("cycle needs at least 3 vertices");
      break;
    case Family::star:
      if (size < 1) throw GraphError("star needs at least 1 leaf");
      break;
    default:
      throw GraphError("SmallGraph supports path, cycle and star only");
  }
}

std::string SmallGraph::name() const {
  const char* tag = kind_ == Family::path ? "path:" : kind_ == Family::cycle ? "cycle:" : "star:";
  return tag + std::to_string(size_);
}

int SmallGraph::degree_bound() const {
  if (kind_ == Family::star) return static_cast<int>(std::max<std::uint32_t>(size_, 2));
  return 2;
}

bool SmallGraph::contains(const VertexId& v) const {
  const auto* p = std::get_if<LatticePoint>(&v);
  if (p == nullptr || p->x[1] != 0 || p->x[2] != 0 || p->x[3] != 0 || p->x[0] < 0) return false;
  const auto limit = kind_ == Family::star ? size_ + 1 : size_;
  return static_cast<std::uint32_t>(p->x[0]) < limit;
}

void SmallGraph::raw_neighbors(const VertexId& v, std::vector<VertexId>& out) const {
  const auto x = std::get<LatticePoint>(v).x[0];
  auto at = [](std::int64_t i) { return LatticePoint{{static_cast<std::int32_t>(i), 0, 0, 0}}; };
  const auto n = static_cast<std::int64_t>(size_);
  switch (kind_) {
    case Family::path:
      if (x > 0) out.emplace_back(at(x - 1));
      if (x + 1 < n) out.emplace_back(at(x + 1));
      break;
    case Family::cycle:
      out.emplace_back(at((x + n - 1) % n));
      out.emplace_back(at((x + 1) % n));
      break;
    default:
      if (x == 0) {
        for (std::int64_t i = 1; i <= n; ++i) out.emplace_back(at(i));
      } else {
        out.emplace_back(at(0));
      }
  }
}

void SmallGraph::encode_fields(const VertexId& v, std::string& out) const {
  put_u32(out, static_cast<std::uint32_t>(std::get<LatticePoint>(v).x[0]));
}

VertexId SmallGraph::decode_fields(std::string_view& bytes) const {
  LatticePoint p;
  p.x[0] = static_cast<std::int32_t>(take_u32(bytes));
  return p;
}

// --- Construction ----------------------------------------------------------

GraphSpec GraphSpec::parse(std::string_view text) {
  GraphSpec spec;
  const auto colon = text.find(':');
  spec.family = std::string(text.substr(0, colon));
  const std::string_view args = colon == std::string_view::npos ? std::string_view{} : text.substr(colon + 1);
  auto need_arg = [&] {
    if (args.empty()) throw GraphError("graph family '" + spec.family + "' needs a parameter");
  };
  if (spec.family == "lattice" || spec.family == "Z") {
    spec.family = "lattice";
    need_arg();
    spec.dimension = static_cast<int>(parse_u32(args));
  } else if (spec.family == "tree" || spec.family == "binary-tree") {
    spec.family = "tree";
  } else if (spec.family == "finite-tree") {
    need_arg();
    spec.depth = parse_u32(args);
  } else if (spec.family == "stretched") {
    if (!args.empty()) spec.root_children = parse_u32(args);
  } else if (spec.family == "concatenated") {
    std::string_view rest = args;
    while (!rest.empty()) {
      const auto comma = rest.find(',');
      spec.depths.push_back(parse_u32(rest.substr(0, comma)));
      rest = comma == std::string_view::npos ? std::string_view{} : rest.substr(comma + 1);
    }
  } else if (spec.family == "path" || spec.family == "cycle" || spec.family == "star") {
    need_arg();
    spec.size = parse_u32(args);
  } else {
    throw GraphError("unknown graph family: " + spec.family);
  }
  return spec;
}

Graph make_graph(const GraphSpec& spec) {
  if (spec.family == "lattice") return std::make_shared<LatticeGraph>(spec.dimension);
  if (spec.family == "tree") return std::make_shared<BinaryTreeGraph>(0);
  if (spec.family == "finite-tree") {
    if (spec.depth < 1) throw GraphError("finite tree depth must be >= 1");
    return std::make_shared<BinaryTreeGraph>(spec.depth);
  }
  if (spec.family == "stretched") return std::make_shared<StretchedTreeGraph>(spec.root_children);
  if (spec.family == "concatenated") return std::make_shared<ConcatenatedTreesGraph>(spec.depths);
  if (spec.family == "path") return std::make_shared<SmallGraph>(Family::path, spec.size);
  if (spec.family == "cycle") return std::make_shared<SmallGraph>(Family::cycle, spec.size);
  if (spec.family == "star") return std::make_shared<SmallGraph>(Family::star, spec.size);
  throw GraphError("unknown graph family: " + spec.family);
}

Graph make_graph(std::string_view text) { return make_graph(GraphSpec::parse(text)); }

// --- Text helpers ----------------------------------------------------------

std::string to_hex(std::string_view bytes) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string s;
  s.reserve(bytes.size() * 2);
  for (unsigned char c : bytes) {
    s.push_back(kDigits[c >> 4]);
    s.push_back(kDigits[c & 15]);
  }
  return s;
}

std::string from_hex(std::string_view hex) {
  if (hex.size() % 2 != 0) throw GraphError("odd-length hex string");
  auto nibble = [](char c) -> int {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    throw GraphError("bad hex digit");
  };
  std::string out;
  out.reserve(hex.size() / 2);
  for (std::size_t i = 0; i < hex.size(); i += 2) {
    out.push_back(static_cast<char>(nibble(hex[i]) * 16 + nibble(hex[i + 1])));
  }
  return out;
}

std::string describe(const VertexId& v) {
  auto digits = [](const TreeAddress& a) {
    std::string s;
    for (std::uint32_t i = 0; i < a.depth(); ++i) s.push_back(static_cast<char>('0' + a.digit(i)));
    return s.empty() ? std::string("root") : s;
  };
  return std::visit(
      [&](const auto& p) -> std::string {
        using T = std::decay_t<decltype(p)>;
        std::ostringstream os;
        if constexpr (std::is_same_v<T, LatticePoint>) {
          os << '(' << p.x[0] << ',' << p.x[1] << ',' << p.x[2] << ',' << p.x[3] << ')';
        } else if constexpr (std::is_same_v<T, TreeAddress>) {
          os << digits(p);
        } else if constexpr (std::is_same_v<T, StretchedPoint>) {
          os << digits(p.branch) << '+' << p.offset;
        } else {
          os << 't' << p.tree << ':' << digits(p.address);
        }
        return os.str();
      },
      v);
}

}  // namespace rangewalk
