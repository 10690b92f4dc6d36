#include "fiberwalk/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace fiberwalk {

namespace {

constexpr double kWidth = 640.0;
constexpr double kHeight = 420.0;
constexpr double kLeft = 60.0;
constexpr double kRight = 20.0;
constexpr double kTop = 40.0;
constexpr double kBottom = 50.0;

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '&')
      out += "&amp;";
    else if (c == '<')
      out += "&lt;";
    else if (c == '>')
      out += "&gt;";
    else
      out += c;
  }
  return out;
}

struct Frame {
  double x0, x1, y0, y1;  // data ranges; y1 > y0

  double px(double x) const {
    return kLeft + (x - x0) / (x1 - x0) * (kWidth - kLeft - kRight);
  }
  double py(double y) const {
    return kHeight - kBottom -
           (y - y0) / (y1 - y0) * (kHeight - kTop - kBottom);
  }
};

class SvgFile {
 public:
  explicit SvgFile(const std::string& path) : out_(path) {
    if (!out_) throw std::runtime_error("cannot write " + path);
    out_ << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fmt(kWidth)
         << "\" height=\"" << fmt(kHeight) << "\" viewBox=\"0 0 "
         << fmt(kWidth) << " " << fmt(kHeight) << "\">\n"
         << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  }
  ~SvgFile() { out_ << "</svg>\n"; }

  void title(const std::string& text) {
    out_ << "<text x=\"" << fmt(kWidth / 2)
         << "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" "
            "font-size=\"15\">"
         << escape(text) << "</text>\n";
  }

  void axes(const Frame& f) {
    line(kLeft, kHeight - kBottom, kWidth - kRight, kHeight - kBottom,
         "#000000", 1.0);
    line(kLeft, kTop, kLeft, kHeight - kBottom, "#000000", 1.0);
    label(kLeft, kHeight - kBottom + 18, fmt(f.x0), "start");
    label(kWidth - kRight, kHeight - kBottom + 18, fmt(f.x1), "end");
    label(kLeft - 6, kHeight - kBottom + 4, fmt(f.y0), "end");
    label(kLeft - 6, kTop + 4, fmt(f.y1), "end");
  }

  void line(double x1, double y1, double x2, double y2,
            const std::string& color, double width) {
    out_ << "<line x1=\"" << fmt(x1) << "\" y1=\"" << fmt(y1) << "\" x2=\""
         << fmt(x2) << "\" y2=\"" << fmt(y2) << "\" stroke=\"" << color
         << "\" stroke-width=\"" << fmt(width) << "\"/>\n";
  }

  void rect(double x, double y, double w, double h, const std::string& fill) {
    out_ << "<rect x=\"" << fmt(x) << "\" y=\"" << fmt(y) << "\" width=\""
         << fmt(w) << "\" height=\"" << fmt(h) << "\" fill=\"" << fill
         << "\" stroke=\"#40607a\" stroke-width=\"0.5\"/>\n";
  }

  void polyline(const std::vector<std::pair<double, double>>& pts,
                const std::string& color) {
    out_ << "<polyline fill=\"none\" stroke=\"" << color
         << "\" stroke-width=\"1.5\" points=\"";
    for (const auto& [x, y] : pts) out_ << fmt(x) << "," << fmt(y) << " ";
    out_ << "\"/>\n";
  }

  void label(double x, double y, const std::string& text,
             const std::string& anchor) {
    out_ << "<text x=\"" << fmt(x) << "\" y=\"" << fmt(y) << "\" text-anchor=\""
         << anchor
         << "\" font-family=\"sans-serif\" font-size=\"11\" fill=\"#333333\">"
         << escape(text) << "</text>\n";
  }

 private:
  std::ofstream out_;
};

}  // namespace

void write_histogram_svg(const std::string& path, const Histogram& h,
                         int chi_square_df, const std::string& title) {
  if (h.counts.empty()) throw std::invalid_argument("empty histogram");
  Int total = 0;
  for (Int c : h.counts) total += c;
  double x0 = h.edges.front();
  double x1 = h.edges.back();
  if (chi_square_df >= 1) x0 = std::min(x0, 0.0);

  double ymax = 0.0;
  std::vector<double> density(h.counts.size());
  for (std::size_t b = 0; b < h.counts.size(); ++b) {
    double w = h.edges[b + 1] - h.edges[b];
    density[b] = w > 0.0 ? static_cast<double>(h.counts[b]) / (total * w) : 0.0;
    ymax = std::max(ymax, density[b]);
  }

  std::vector<std::pair<double, double>> overlay;
  if (chi_square_df >= 1) {
    const int grid = 200;
    double step = (x1 - x0) / grid;
    if (step > 0.0) {
      for (int i = 0; i < grid; ++i) {
        double a = x0 + step * i;
        double d =
            (chi_square_cdf(a + step, chi_square_df) -
             chi_square_cdf(std::max(0.0, a), chi_square_df)) /
            step;
        overlay.emplace_back(a + 0.5 * step, d);
        ymax = std::max(ymax, d);
      }
    }
  }
  if (ymax <= 0.0) ymax = 1.0;

  SvgFile svg(path);
  Frame f{x0, x1, 0.0, ymax * 1.05};
  svg.title(title);
  for (std::size_t b = 0; b < h.counts.size(); ++b) {
    double px = f.px(h.edges[b]);
    double pw = f.px(h.edges[b + 1]) - px;
    double py = f.py(density[b]);
    svg.rect(px, py, pw, f.py(0.0) - py, "#9dc3e6");
  }
  if (!overlay.empty()) {
    std::vector<std::pair<double, double>> pts;
    pts.reserve(overlay.size());
    for (const auto& [x, d] : overlay) pts.emplace_back(f.px(x), f.py(d));
    svg.polyline(pts, "#d62728");
  }
  svg.axes(f);
}

void write_path_svg(const std::string& path,
                    const std::vector<PathPoint>& points,
                    const std::string& title) {
  if (points.empty()) throw std::invalid_argument("empty path");
  double x0 = static_cast<double>(points.front().step);
  double x1 = static_cast<double>(points.back().step);
  if (x1 <= x0) x1 = x0 + 1.0;
  double y0 = points.front().value;
  double y1 = y0;
  for (const auto& p : points) {
    y0 = std::min(y0, p.value);
    y1 = std::max(y1, p.value);
  }
  if (y1 <= y0) y1 = y0 + 1.0;

  SvgFile svg(path);
  Frame f{x0, x1, y0, y1};
  svg.title(title);
  std::vector<std::pair<double, double>> pts;
  pts.reserve(points.size());
  for (const auto& p : points)
    pts.emplace_back(f.px(static_cast<double>(p.step)), f.py(p.value));
  svg.polyline(pts, "#1f77b4");
  svg.axes(f);
}

void write_correlogram_svg(const std::string& path,
                           const std::vector<double>& rho,
                           const std::string& title) {
  if (rho.empty()) throw std::invalid_argument("empty correlogram");
  SvgFile svg(path);
  Frame f{0.0, static_cast<double>(rho.size() - 1) + 0.5, -1.0, 1.0};
  svg.title(title);
  svg.line(f.px(0.0), f.py(0.0), f.px(f.x1), f.py(0.0), "#888888", 0.8);
  for (std::size_t lag = 0; lag < rho.size(); ++lag) {
    double x = f.px(static_cast<double>(lag));
    svg.line(x, f.py(0.0), x, f.py(rho[lag]), "#1f77b4", 2.0);
  }
  svg.axes(f);
}

}  // namespace fiberwalk
