#include "fiberwalk/movegen.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace fiberwalk {

CoefficientDistribution CoefficientDistribution::poisson(double lambda) {
  if (!(lambda > 0.0))
    throw std::invalid_argument("Poisson mean must be positive");
  return {Kind::Poisson, lambda};
}

CoefficientDistribution CoefficientDistribution::geometric(double p) {
  if (!(p > 0.0) || !(p < 1.0))
    throw std::invalid_argument("geometric parameter must be in (0, 1)");
  return {Kind::Geometric, p};
}

CoefficientDistribution CoefficientDistribution::parse(std::string_view spec) {
  auto colon = spec.find(':');
  if (colon == std::string_view::npos)
    throw std::invalid_argument(
        "distribution spec must be poisson:<lambda> or geometric:<p>");
  std::string name(spec.substr(0, colon));
  std::string value(spec.substr(colon + 1));
  double v;
  try {
    std::size_t used = 0;
    v = std::stod(value, &used);
    if (used != value.size()) throw std::invalid_argument(value);
  } catch (const std::exception&) {
    throw std::invalid_argument("invalid distribution parameter '" + value +
                                "'");
  }
  if (name == "poisson") return poisson(v);
  if (name == "geometric") return geometric(v);
  throw std::invalid_argument("unknown distribution '" + name + "'");
}

std::string CoefficientDistribution::to_string() const {
  std::string name = kind == Kind::Poisson ? "poisson" : "geometric";
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%g", param);
  return name + ":" + buf;
}

PoissonSampler::PoissonSampler(double lambda) {
  if (!(lambda > 0.0))
    throw std::invalid_argument("Poisson mean must be positive");
  chunks_ = lambda <= 30.0 ? 1 : static_cast<int>(std::ceil(lambda / 30.0));
  double chunk_lambda = lambda / chunks_;
  double p = std::exp(-chunk_lambda);
  double cumulative = p;
  cdf_.push_back(cumulative);
  for (Int k = 1; p > 0.0 && cumulative < 1.0; ++k) {
    p *= chunk_lambda / static_cast<double>(k);
    cumulative += p;
    cdf_.push_back(cumulative);
  }
}

Int PoissonSampler::draw(RandomSource& rng) const {
  Int total = 0;
  for (int c = 0; c < chunks_; ++c) {
    double u = rng.next_unit();
    auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
    total += static_cast<Int>(it - cdf_.begin());
  }
  return total;
}

Int draw_geometric(double p, RandomSource& rng) {
  if (!(p > 0.0) || !(p < 1.0))
    throw std::invalid_argument("geometric parameter must be in (0, 1)");
  double u = rng.next_unit();
  // Inversion: m = 1 + floor(log(1-u) / log(1-p)), supported on {1, 2, ...}.
  double m = 1.0 + std::floor(std::log1p(-u) / std::log1p(-p));
  return std::max<Int>(1, static_cast<Int>(m));
}

std::vector<Int> draw_coefficients_poisson(int k, double lambda,
                                           RandomSource& rng) {
  PoissonSampler sampler(lambda);
  std::vector<Int> alpha(k);
  for (;;) {
    bool all_zero = true;
    for (int i = 0; i < k; ++i) {
      alpha[i] = sampler.draw(rng);
      if (alpha[i] != 0) all_zero = false;
    }
    if (!all_zero) break;
  }
  for (int i = 0; i < k; ++i)
    if (rng.next_fair_sign()) alpha[i] = -alpha[i];
  return alpha;
}

std::vector<Int> draw_coefficients_geometric(int k, double p,
                                             RandomSource& rng) {
  if (k < 1) throw std::invalid_argument("need at least one coefficient");
  Int total = draw_geometric(p, rng);
  std::vector<Int> alpha(k, 0);
  for (Int i = 0; i < total; ++i)
    ++alpha[rng.next_below(static_cast<std::uint64_t>(k))];
  for (int i = 0; i < k; ++i)
    if (rng.next_fair_sign()) alpha[i] = -alpha[i];
  return alpha;
}

Move compose_move(const LatticeBasis& basis, std::span<const Int> alpha) {
  if (static_cast<int>(alpha.size()) != basis.size())
    throw std::invalid_argument("coefficient count does not match basis size");
  Move out(std::vector<Int>(basis.dimension(), 0));
  for (int k = 0; k < basis.size(); ++k) {
    Int a = alpha[k];
    if (a == 0) continue;
    const auto& z = basis[k].z;
    for (int i = 0; i < basis.dimension(); ++i) {
      if (z[i] == 0) continue;
      out.z[i] = checked_add(out.z[i], checked_mul(a, z[i]));
    }
  }
  return out;
}

MoveGenerator::MoveGenerator(const LatticeBasis& basis,
                             CoefficientDistribution dist)
    : basis_(basis), dist_(dist) {
  if (basis_.empty())
    throw std::invalid_argument("move generation needs a non-empty basis");
  // The distribution parameter governs the expected total coefficient
  // magnitude, not the per-component mean: each component gets mean
  // lambda/K, so the sum of magnitudes is Poisson(lambda) split uniformly
  // over the basis. Proposal size then stays comparable across basis sizes
  // and matches the geometric generator, whose parameter also sets the
  // total via mean 1/p.
  if (dist_.kind == CoefficientDistribution::Kind::Poisson)
    poisson_.emplace_back(dist_.param / static_cast<double>(basis_.size()));
}

std::vector<Int> MoveGenerator::draw_coefficients(RandomSource& rng) const {
  const int k = basis_.size();
  if (dist_.kind == CoefficientDistribution::Kind::Poisson) {
    std::vector<Int> alpha(k);
    for (;;) {
      bool all_zero = true;
      for (int i = 0; i < k; ++i) {
        alpha[i] = poisson_[0].draw(rng);
        if (alpha[i] != 0) all_zero = false;
      }
      if (!all_zero) break;
    }
    for (int i = 0; i < k; ++i)
      if (rng.next_fair_sign()) alpha[i] = -alpha[i];
    return alpha;
  }
  return draw_coefficients_geometric(k, dist_.param, rng);
}

Move MoveGenerator::draw(RandomSource& rng) const {
  return compose_move(basis_, draw_coefficients(rng));
}

Move draw_move(const LatticeBasis& basis, const CoefficientDistribution& dist,
               RandomSource& rng) {
  return MoveGenerator(basis, dist).draw(rng);
}

}  // namespace fiberwalk
