#ifndef FIBERWALK_MOVEGEN_HPP
#define FIBERWALK_MOVEGEN_HPP

#include <string>
#include <string_view>
#include <vector>

#include "fiberwalk/move.hpp"
#include "fiberwalk/random_source.hpp"

namespace fiberwalk {

/// Law of the integer coefficient vector used to combine basis moves:
/// independent Poisson magnitudes, or a geometric total magnitude allocated
/// multinomially. Signs are always independent and fair.
struct CoefficientDistribution {
  enum class Kind { Poisson, Geometric };

  Kind kind = Kind::Poisson;
  double param = 1.0;  // lambda for Poisson, p for Geometric

  static CoefficientDistribution poisson(double lambda);
  static CoefficientDistribution geometric(double p);

  /// Parses "poisson:<lambda>" or "geometric:<p>".
  static CoefficientDistribution parse(std::string_view spec);
  std::string to_string() const;
};

/// Exact Poisson sampler by inversion of a precomputed cdf table. For
/// lambda > 30 the draw is a sum of independent draws at lambda/m <= 30,
/// which has the exact target law. The table extends until the pmf
/// underflows double precision, so every practically reachable value keeps
/// positive probability. Immutable after construction.
class PoissonSampler {
 public:
  explicit PoissonSampler(double lambda);
  Int draw(RandomSource& rng) const;

 private:
  int chunks_;
  std::vector<double> cdf_;  // cdf of Poisson(lambda / chunks_)
};

/// Geometric draw supported on {1, 2, ...} with P(m) = p (1-p)^(m-1).
Int draw_geometric(double p, RandomSource& rng);

/// Magnitudes |alpha_k| iid Poisson(lambda) conditioned on not all zero,
/// then independent fair signs.
std::vector<Int> draw_coefficients_poisson(int k, double lambda,
                                           RandomSource& rng);

/// Total magnitude from Geom(p) on {1, 2, ...}, allocated by a multinomial
/// with equal cell probabilities, then independent fair signs.
std::vector<Int> draw_coefficients_geometric(int k, double p,
                                             RandomSource& rng);

/// sum_k alpha_k z_k; the zero move is possible for redundant bases.
Move compose_move(const LatticeBasis& basis, std::span<const Int> alpha);

/// Binds a basis and a coefficient distribution; the Poisson cdf table is
/// built once. The distribution's parameter sets the expected total
/// coefficient magnitude over the whole basis (Poisson: each component
/// mean lambda/K; geometric: total mean 1/p), so proposal size does not
/// grow with the basis. Value-like and safe to share across threads, each
/// thread using its own RandomSource.
class MoveGenerator {
 public:
  MoveGenerator(const LatticeBasis& basis, CoefficientDistribution dist);

  const LatticeBasis& basis() const { return basis_; }
  const CoefficientDistribution& distribution() const { return dist_; }

  std::vector<Int> draw_coefficients(RandomSource& rng) const;
  Move draw(RandomSource& rng) const;

 private:
  LatticeBasis basis_;
  CoefficientDistribution dist_;
  std::vector<PoissonSampler> poisson_;  // one entry when kind is Poisson
};

/// One-shot convenience around MoveGenerator.
Move draw_move(const LatticeBasis& basis, const CoefficientDistribution& dist,
               RandomSource& rng);

}  // namespace fiberwalk

#endif
