#pragma once

#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "qte/matrix.hpp"

namespace qte {

// Zero thresholds sized to the double-precision roundoff floor of 9×9
// problems: an eigenvalue counts as negative below −kNegativityZeroTol,
// R counts as positive above +kRZeroTol.
constexpr double kNegativityZeroTol = 1e-12;
constexpr double kRZeroTol = 1e-12;

// Input density matrices may carry eigenvalues down to this floor from
// upstream roundoff; such dips are clipped to 0 (and the state
// renormalized) before a criterion is evaluated. Anything below the floor
// is rejected as not a state.
constexpr double kPsdFloor = -1e-10;

// "The detector fires" threshold used by sweeps and threshold search —
// deliberately looser than the zero tolerances above.
constexpr double kDetectThreshold = 1e-9;

constexpr double kNaturalBase = 2.718281828459045;  // default log base for R

inline double log_in_base(double x, double base) {
  if (base == kNaturalBase) return std::log(x);
  return std::log(x) / std::log(base);
}

namespace detail {

// Side length of the two equal subsystems a dim×dim bipartite matrix
// splits into; rejects dimensions that are not perfect squares.
inline Eigen::Index subsystem_dim(const ComplexMatrix& rho, const char* who) {
  const Eigen::Index dim = rho.rows();
  if (rho.cols() != dim || dim < 1)
    throw BadDimension(std::string(who) + ": need a nonempty square matrix, got " +
                       std::to_string(rho.rows()) + "x" + std::to_string(rho.cols()));
  const auto s = static_cast<Eigen::Index>(std::llround(std::sqrt(double(dim))));
  if (s * s != dim)
    throw BadDimension(std::string(who) + ": dimension " + std::to_string(dim) +
                       " is not a perfect square, no equal bipartite split exists");
  return s;
}

}  // namespace detail

// Partial transpose over the first subsystem. Viewing rho as s×s blocks of
// s×s, block (i,j) of the result is block (j,i) of rho — blocks swapped,
// intra-block entries untouched: result[(i,k),(j,l)] = rho[(j,k),(i,l)].
inline ComplexMatrix partial_transpose_first(const ComplexMatrix& rho) {
  const Eigen::Index s = detail::subsystem_dim(rho, "partial_transpose_first");
  ComplexMatrix out(rho.rows(), rho.cols());
  for (Eigen::Index i = 0; i < s; ++i)
    for (Eigen::Index j = 0; j < s; ++j)
      out.block(i * s, j * s, s, s) = rho.block(j * s, i * s, s, s);
  return out;
}

// Validation result: the (possibly re-normalized) state plus the total
// eigenvalue weight clipped away, so callers can log it.
struct ValidatedDensity {
  ComplexMatrix rho;
  double clip_magnitude = 0.0;
};

// Checks Hermiticity, unit trace, and positivity down to kPsdFloor; dips
// inside the floor are clipped to zero and the state renormalized.
// The error message names the check that failed.
inline ValidatedDensity validate_density(const ComplexMatrix& rho) {
  if (rho.rows() != rho.cols() || rho.rows() < 1)
    throw InvalidDensityMatrix("density matrix must be square, got " +
                               std::to_string(rho.rows()) + "x" + std::to_string(rho.cols()));
  const double herm = hermiticity_defect(rho);
  if (herm > 1e-10)
    throw InvalidDensityMatrix("hermiticity defect " + std::to_string(herm) +
                               " exceeds 1e-10");
  const Complex tr = rho.trace();
  if (std::abs(tr - Complex{1.0, 0.0}) > 1e-10)
    throw InvalidDensityMatrix("trace is " + std::to_string(tr.real()) + " + " +
                               std::to_string(tr.imag()) + "i, not 1");
  const Spectrum s = hermitian_eigen(rho);
  if (s.values(0) < kPsdFloor)
    throw InvalidDensityMatrix("smallest eigenvalue " + std::to_string(s.values(0)) +
                               " is below the PSD floor " + std::to_string(kPsdFloor));
  if (s.values(0) >= 0.0) return {rho, 0.0};

  // Roundoff dip within the floor: clip and renormalize.
  double clipped = 0.0;
  RealVector w = s.values;
  for (Eigen::Index i = 0; i < w.size(); ++i)
    if (w(i) < 0.0) {
      clipped += -w(i);
      w(i) = 0.0;
    }
  ComplexMatrix fixed = s.vectors * (w / w.sum()).asDiagonal() * s.vectors.adjoint();
  fixed = ((fixed + fixed.adjoint()) / 2.0).eval();
  return {std::move(fixed), clipped};
}

struct NegativityResult {
  double negativity = 0.0;                   // N = Σ|μᵢ| over the listed μᵢ
  std::vector<double> negative_eigenvalues;  // μᵢ < −kNegativityZeroTol, ascending
  RealVector pt_spectrum;                    // all eigenvalues of ρ^{T₁}, ascending
  double clip_magnitude = 0.0;               // weight clipped by validation
};

// Negativity N(ρ) = Σᵢ|μᵢ| over the negative eigenvalues of the partial
// transpose. N > 0 certifies entanglement; N = 0 decides nothing.
inline NegativityResult negativity(const ComplexMatrix& rho) {
  ValidatedDensity vd = validate_density(rho);
  const Spectrum pt = hermitian_eigen(partial_transpose_first(vd.rho));

  NegativityResult out;
  out.pt_spectrum = pt.values;
  out.clip_magnitude = vd.clip_magnitude;
  for (Eigen::Index i = 0; i < pt.values.size(); ++i)
    if (pt.values(i) < -kNegativityZeroTol) {
      out.negative_eigenvalues.push_back(pt.values(i));
      out.negativity += -pt.values(i);
    }
  return out;
}

// Realignment of an (m·n)×(m·n) matrix viewed as m×m blocks of size n×n:
// row j·m+i of the result is vec(block(i,j))ᵀ, with vec stacking columns,
// so out(j·m+i, c·n+r) = rho(i·n+r, j·n+c). Blocks are traversed j-major —
// (1,1), (2,1), …, (m,1), (1,2), … — the layout the golden reference file
// in tests/data pins bit-exactly.
inline ComplexMatrix realign(const ComplexMatrix& rho, Eigen::Index block_size) {
  const Eigen::Index n = block_size, dim = rho.rows();
  if (rho.cols() != dim || n < 1 || dim % n != 0)
    throw BadDimension("realign: " + std::to_string(rho.rows()) + "x" +
                       std::to_string(rho.cols()) + " does not split into blocks of " +
                       std::to_string(n));
  const Eigen::Index m = dim / n;
  ComplexMatrix out(m * m, n * n);
  for (Eigen::Index i = 0; i < m; ++i)
    for (Eigen::Index j = 0; j < m; ++j)
      for (Eigen::Index r = 0; r < n; ++r)
        for (Eigen::Index c = 0; c < n; ++c)
          out(j * m + i, c * n + r) = rho(i * n + r, j * n + c);
  return out;
}

struct RealignmentResult {
  double trace_norm = 0.0;     // Σσᵢ of the realigned matrix
  double r_value = 0.0;        // log_base(Σσᵢ)
  RealVector singular_values;  // nonincreasing
  bool entangled_flag = false;  // r_value > kRZeroTol
  double log_base = kNaturalBase;
  double clip_magnitude = 0.0;  // weight clipped by validation
};

// Realignment (CCNR) criterion: Σσᵢ of the realigned ρ exceeding 1 —
// equivalently R = log Σσᵢ > 0 — certifies entanglement. The sign of R is
// independent of the log base; only the magnitude changes.
inline RealignmentResult realignment_criterion(const ComplexMatrix& rho,
                                               double log_base = kNaturalBase) {
  ValidatedDensity vd = validate_density(rho);
  const Eigen::Index s = detail::subsystem_dim(rho, "realignment_criterion");

  RealignmentResult out;
  out.singular_values = singular_values(realign(vd.rho, s));
  out.trace_norm = out.singular_values.sum();
  out.r_value = log_in_base(out.trace_norm, log_base);
  out.entangled_flag = out.r_value > kRZeroTol;
  out.log_base = log_base;
  out.clip_magnitude = vd.clip_magnitude;
  return out;
}

}  // namespace qte
