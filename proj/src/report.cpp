#include "rangewalk/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace rangewalk {

namespace {

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

double scale(const ReportRow& row, bool bits) { return bits && row.entropy_unit ? 1.0 / std::log(2.0) : 1.0; }

std::string xml_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

}  // namespace

bool ExperimentReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
}

void ExperimentReport::check(std::string name, bool ok, std::string detail) {
  checks.push_back({std::move(name), ok, std::move(detail)});
}

std::vector<const ReportRow*> ExperimentReport::series(const std::string& graph, const std::string& statistic) const {
  std::vector<const ReportRow*> out;
  for (const auto& row : rows) {
    if (row.graph == graph && row.statistic == statistic) out.push_back(&row);
  }
  return out;
}

std::string results_csv(const ExperimentReport& report, bool bits) {
  std::string out = "# schema=1\ngraph,n,statistic,mean,stderr,samples,seed,horizon,r,provenance\n";
  for (const auto& row : report.rows) {
    const double k = scale(row, bits);
    out += csv_field(row.graph) + ',' + std::to_string(row.n) + ',' + csv_field(row.statistic) + ',' +
           num(row.value.mean * k) + ',' + num(row.value.std_error * k) + ',' + std::to_string(row.value.count) +
           ',' + std::to_string(row.value.seed) + ',' + std::to_string(row.value.horizon) + ',' +
           (row.r ? std::to_string(*row.r) : std::string{}) + ',' + (row.exact ? "exact" : "mc") + '\n';
  }
  return out;
}

nlohmann::json results_json(const ExperimentReport& report, bool bits) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : report.rows) {
    const double k = scale(row, bits);
    nlohmann::json j{{"graph", row.graph},
                     {"n", row.n},
                     {"statistic", row.statistic},
                     {"mean", row.value.mean * k},
                     {"stderr", row.value.std_error * k},
                     {"samples", row.value.count},
                     {"seed", row.value.seed},
                     {"horizon", row.value.horizon},
                     {"provenance", row.exact ? "exact" : "mc"}};
    j["r"] = row.r ? nlohmann::json(*row.r) : nlohmann::json(nullptr);
    rows.push_back(std::move(j));
  }
  nlohmann::json checks = nlohmann::json::array();
  for (const auto& c : report.checks) checks.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
  return {{"schema", 1},
          {"experiment", report.experiment},
          {"units", bits ? "bits" : "nats"},
          {"passed", report.passed()},
          {"rows", rows},
          {"checks", checks}};
}

std::string svg_line_chart(const std::string& title, const std::string& y_label,
                           const std::vector<PlotSeries>& series, bool log_x) {
  constexpr double W = 640, H = 400, left = 70, right = 170, top = 40, bottom = 50;
  static const char* const palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};

  auto fx = [&](double x) { return log_x ? std::log10(std::max(x, 1e-300)) : x; };
  double x0 = INFINITY, x1 = -INFINITY, y0 = INFINITY, y1 = -INFINITY;
  for (const auto& s : series) {
    for (auto [x, y] : s.points) {
      if (log_x && x <= 0) continue;
      x0 = std::min(x0, fx(x));
      x1 = std::max(x1, fx(x));
      y0 = std::min(y0, y);
      y1 = std::max(y1, y);
    }
  }
  if (!(x0 <= x1)) x0 = 0, x1 = 1, y0 = 0, y1 = 1;
  if (x1 - x0 < 1e-12) x0 -= 0.5, x1 += 0.5;
  y0 = std::min(y0, 0.0);
  if (y1 - y0 < 1e-12) y1 = y0 + 1;
  y1 += 0.05 * (y1 - y0);

  const double pw = W - left - right, ph = H - top - bottom;
  auto px = [&](double x) { return left + (fx(x) - x0) / (x1 - x0) * pw; };
  auto py = [&](double y) { return top + (1.0 - (y - y0) / (y1 - y0)) * ph; };

  std::ostringstream os;
  os.setf(std::ios::fixed);
  os.precision(2);
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "<text x=\"" << W / 2 << "\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">" << xml_escape(title) << "</text>\n";
  os << "<line x1=\"" << left << "\" y1=\"" << top + ph << "\" x2=\"" << left + pw << "\" y2=\"" << top + ph << "\" stroke=\"black\"/>\n";
  os << "<line x1=\"" << left << "\" y1=\"" << top << "\" x2=\"" << left << "\" y2=\"" << top + ph << "\" stroke=\"black\"/>\n";

  // x ticks: powers of ten on a log axis, five even steps otherwise.
  std::vector<double> xt;
  if (log_x) {
    for (double e = std::ceil(x0); e <= std::floor(x1) + 1e-9; e += 1) xt.push_back(std::pow(10.0, e));
  } else {
    for (int i = 0; i <= 4; ++i) xt.push_back(x0 + (x1 - x0) * i / 4);
  }
  for (double x : xt) {
    os << "<line x1=\"" << px(x) << "\" y1=\"" << top + ph << "\" x2=\"" << px(x) << "\" y2=\"" << top + ph + 5 << "\" stroke=\"black\"/>\n";
    os << "<text x=\"" << px(x) << "\" y=\"" << top + ph + 18 << "\" text-anchor=\"middle\">" << num(x) << "</text>\n";
  }
  for (int i = 0; i <= 4; ++i) {
    const double y = y0 + (y1 - y0) * i / 4;
    os << "<line x1=\"" << left - 5 << "\" y1=\"" << py(y) << "\" x2=\"" << left << "\" y2=\"" << py(y) << "\" stroke=\"black\"/>\n";
    os << "<text x=\"" << left - 8 << "\" y=\"" << py(y) + 4 << "\" text-anchor=\"end\">" << num(std::round(y * 1000) / 1000) << "</text>\n";
  }
  os << "<text x=\"" << left + pw / 2 << "\" y=\"" << H - 12 << "\" text-anchor=\"middle\">n</text>\n";
  os << "<text x=\"16\" y=\"" << top + ph / 2 << "\" text-anchor=\"middle\" transform=\"rotate(-90 16 " << top + ph / 2 << ")\">" << xml_escape(y_label) << "</text>\n";

  for (std::size_t i = 0; i < series.size(); ++i) {
    const char* color = palette[i % std::size(palette)];
    os << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"2\" points=\"";
    bool first = true;
    for (auto [x, y] : series[i].points) {
      if (log_x && x <= 0) continue;
      os << (first ? "" : " ") << px(x) << ',' << py(y);
      first = false;
    }
    os << "\"/>\n";
    for (auto [x, y] : series[i].points) {
      if (log_x && x <= 0) continue;
      os << "<circle cx=\"" << px(x) << "\" cy=\"" << py(y) << "\" r=\"3\" fill=\"" << color << "\"/>\n";
    }
    const double ly = top + 10 + 18.0 * static_cast<double>(i);
    os << "<line x1=\"" << left + pw + 15 << "\" y1=\"" << ly << "\" x2=\"" << left + pw + 35 << "\" y2=\"" << ly << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n";
    os << "<text x=\"" << left + pw + 40 << "\" y=\"" << ly + 4 << "\">" << xml_escape(series[i].name) << "</text>\n";
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace rangewalk
