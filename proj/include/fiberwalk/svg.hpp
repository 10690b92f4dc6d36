#ifndef FIBERWALK_SVG_HPP
#define FIBERWALK_SVG_HPP

#include <string>
#include <vector>

#include "fiberwalk/stats.hpp"

namespace fiberwalk {

/// Self-contained SVG plots with deterministic formatting, so identical
/// inputs give byte-identical files.

/// Density-scaled bars; when df >= 1, overlays the chi-square density
/// obtained from differences of chi_square_cdf on a fine grid.
void write_histogram_svg(const std::string& path, const Histogram& h,
                         int chi_square_df, const std::string& title);

void write_path_svg(const std::string& path,
                    const std::vector<PathPoint>& points,
                    const std::string& title);

void write_correlogram_svg(const std::string& path,
                           const std::vector<double>& rho,
                           const std::string& title);

}  // namespace fiberwalk

#endif
