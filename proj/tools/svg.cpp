#include "svg.hpp"

#include <algorithm>
#include <cstdio>
#include <limits>
#include <map>
#include <sstream>

namespace trackforge {

namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.1f", v);
  return buf;
}

}  // namespace

std::string render_svg(const LabelledInterval& c, bool diagram) {
  const auto built = relaxed_build(c).track;
  const double S = built.scale;
  const auto pts = c.path.points();

  double x0 = std::numeric_limits<double>::max();
  double y0 = x0;
  double x1 = -x0;
  double y1 = -x0;
  auto grow = [&](double x, double y) {
    x0 = std::min(x0, x);
    x1 = std::max(x1, x);
    y0 = std::min(y0, -y);
    y1 = std::max(y1, -y);
  };
  for (const auto& p : pts) grow(S * p.x, S * p.y);
  for (const auto& q : built.outline) grow(q[0], q[1]);
  const double pad = S;
  const double unit = 12.0;  // pixels per construction unit
  auto X = [&](double x) { return num((x - x0 + pad) * unit); };
  auto Y = [&](double y) { return num((-y - y0 + pad) * unit); };

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num((x1 - x0 + 2 * pad) * unit) << "\" height=\""
      << num((y1 - y0 + 2 * pad) * unit) << "\" font-family=\"sans-serif\" font-size=\"" << num(unit * 1.6) << "\">\n";

  out << "<polyline fill=\"none\" stroke=\"#444\" stroke-width=\"2\" points=\"";
  for (const auto& p : pts) out << X(S * p.x) << "," << Y(S * p.y) << " ";
  out << "\"/>\n";

  if (diagram) {
    out << "<polygon fill=\"none\" stroke=\"#8aa\" stroke-width=\"1\" points=\"";
    for (const auto& q : built.outline) out << X(q[0]) << "," << Y(q[1]) << " ";
    out << "\"/>\n";
  }

  const auto dps = double_points(c.path);
  std::map<int, std::pair<double, double>> twist_sum;
  std::map<int, int> twist_count;
  for (int id = 0; id < built.diagram.crossing_count(); ++id) {
    const auto& o = built.origins[static_cast<std::size_t>(id)];
    const int sign = built.diagram.crossing(id).sign;
    if (o.kind == FeatureKind::kTwist) {
      twist_sum[o.feature].first += o.x;
      twist_sum[o.feature].second += o.y;
      ++twist_count[o.feature];
    } else {
      out << "<text x=\"" << X(o.x) << "\" y=\"" << Y(o.y) << "\" text-anchor=\"middle\" dominant-baseline=\"middle\" fill=\""
          << (sign > 0 ? "#c22" : "#22c") << "\">" << (sign > 0 ? "+" : "&#8722;") << "</text>\n";
    }
    if (diagram) {
      out << "<circle cx=\"" << X(o.x) << "\" cy=\"" << Y(o.y) << "\" r=\"3\" fill=\"" << (sign > 0 ? "#c22" : "#22c")
          << "\"/>\n";
    }
  }
  for (std::size_t k = 0; k < dps.size() && k < c.labels.size(); ++k) {
    out << "<text x=\"" << X(S * dps[k].where.x + 0.25 * S) << "\" y=\"" << Y(S * dps[k].where.y - 0.4 * S)
        << "\" fill=\"#060\">" << c.labels[k].symbol() << "</text>\n";
  }
  for (const auto& [feature, sum] : twist_sum) {
    const double n = twist_count[feature];
    out << "<circle cx=\"" << X(sum.first / n) << "\" cy=\"" << Y(sum.second / n)
        << "\" r=\"6\" fill=\"none\" stroke=\"#a60\" stroke-width=\"2\"/>\n";
  }
  out << "</svg>\n";
  return out.str();
}

}  // namespace trackforge
