#include <algorithm>
#include <catch2/catch_amalgamated.hpp>
#include <vector>

#include "qte/spin_model.hpp"
#include "test_util.hpp"

using namespace qte;
using Catch::Approx;
using qte_test::rng;

namespace {

double max_abs(const ComplexMatrix& m) { return m.cwiseAbs().maxCoeff(); }

std::vector<double> sorted_eigenvalues(const ComplexMatrix& h) {
  const Spectrum s = hermitian_eigen(h);
  return std::vector<double>(s.values.data(), s.values.data() + s.values.size());
}

void require_multiset(const std::vector<double>& got, std::vector<double> expected,
                      double tol) {
  std::sort(expected.begin(), expected.end());
  REQUIRE(got.size() == expected.size());
  for (size_t i = 0; i < got.size(); ++i)
    REQUIRE(got[i] == Approx(expected[i]).margin(tol));
}

const AnalyticLevel& level(const AnalyticSpectrum& s, const std::string& label) {
  for (const auto& l : s.levels)
    if (l.label == label) return l;
  FAIL("no level labeled " + label);
  return s.levels.front();  // unreachable
}

// Exact central-pair eigenvalues, derived independently of the closed forms
// under test: on the exchange-coupled subspace the Hamiltonian acts as
// (J−KΔ)·M + 2K·I with M = [[−Δ,1],[2,0]], whose eigenvalues are
// λ± = (−Δ ± √(Δ²+8))/2; hence ε± = (J−KΔ)·λ± + 2K.
std::pair<double, double> exact_central_pair(const HamiltonianParams& p) {
  const double root = std::sqrt(p.Delta * p.Delta + 8.0);
  const double lp = 0.5 * (-p.Delta + root), lm = 0.5 * (-p.Delta - root);
  const double c = p.J - p.K * p.Delta;
  return {c * lp + 2 * p.K, c * lm + 2 * p.K};
}

}  // namespace

TEST_CASE("spin-1 operators: matrix elements and algebra", "[model]") {
  const SpinOperators s = spin1_operators();
  REQUIRE(s.sz(0, 0) == Complex{1, 0});
  REQUIRE(s.sz(1, 1) == Complex{0, 0});
  REQUIRE(s.sz(2, 2) == Complex{-1, 0});
  REQUIRE(max_abs(s.sz - s.sz.diagonal().asDiagonal().toDenseMatrix()) == 0.0);

  for (const ComplexMatrix* m : {&s.sx, &s.sy, &s.sz})
    REQUIRE(hermiticity_defect(*m) == 0.0);

  // [sx, sy] = i·sz and cyclic; S² = S(S+1)·I with S = 1.
  const Complex i{0, 1};
  REQUIRE(max_abs(s.sx * s.sy - s.sy * s.sx - i * s.sz) < 1e-15);
  REQUIRE(max_abs(s.sy * s.sz - s.sz * s.sy - i * s.sx) < 1e-15);
  REQUIRE(max_abs(s.sz * s.sx - s.sx * s.sz - i * s.sy) < 1e-15);
  REQUIRE(max_abs(s.sx * s.sx + s.sy * s.sy + s.sz * s.sz -
                  2.0 * ComplexMatrix::Identity(3, 3)) < 1e-15);

  // sz|m⟩ = m|m⟩ on the basis kets.
  ComplexVector up = ComplexVector::Zero(3);
  up(0) = 1.0;
  REQUIRE((s.sz * up - up).norm() == 0.0);
}

TEST_CASE("build_hamiltonian: hermiticity and conserved magnetization", "[model]") {
  auto gen = rng(201);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  const ComplexMatrix stot = total_sz();
  for (int trial = 0; trial < 25; ++trial) {
    const HamiltonianParams p{u(gen), u(gen), u(gen), u(gen)};
    const ComplexMatrix h = build_hamiltonian(p);
    REQUIRE(h.rows() == 9);
    REQUIRE(hermiticity_defect(h) <= 1e-12);
    REQUIRE(max_abs(h * stot - stot * h) <= 1e-12);
  }
}

TEST_CASE("build_hamiltonian: known spectra", "[model]") {
  require_multiset(sorted_eigenvalues(build_hamiltonian({1, 0, 1, 0})),
                   {-2, -1, -1, -1, 1, 1, 1, 1, 1}, 1e-10);
  require_multiset(sorted_eigenvalues(build_hamiltonian({-1, 0, 1, 0})),
                   {-1, -1, -1, -1, -1, 1, 1, 1, 2}, 1e-10);
  require_multiset(sorted_eigenvalues(build_hamiltonian({0, 0, 0, 1})),
                   {-2, -1, -1, 0, 0, 0, 1, 1, 2}, 1e-10);

  // Pure biquadratic exchange: restricted to span{|1,−1⟩,|0,0⟩,|−1,1⟩}
  // (indices 2, 4, 6) the spectrum is (0, 2, 2) — not what the case-2
  // closed form predicts; see the analytic-spectrum tests.
  const ComplexMatrix h = build_hamiltonian({0, 1, 0, 0});
  const int idx[3] = {2, 4, 6};
  ComplexMatrix central(3, 3);
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) central(a, b) = h(idx[a], idx[b]);
  require_multiset(sorted_eigenvalues(central), {0, 2, 2}, 1e-12);
}

TEST_CASE("build_hamiltonian: spectrum even in B, shift moves eigenvalues", "[model]") {
  auto gen = rng(202);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (int trial = 0; trial < 10; ++trial) {
    const double j = u(gen), k = u(gen), d = u(gen), b = u(gen);
    const auto plus = sorted_eigenvalues(build_hamiltonian({j, k, d, b}));
    const auto minus = sorted_eigenvalues(build_hamiltonian({j, k, d, -b}));
    for (int i = 0; i < 9; ++i) REQUIRE(plus[i] == Approx(minus[i]).margin(1e-9));

    const double c = u(gen);
    const ComplexMatrix h = build_hamiltonian({j, k, d, b});
    const auto base = sorted_eigenvalues(h);
    const auto shifted =
        sorted_eigenvalues(h + c * ComplexMatrix::Identity(9, 9));
    for (int i = 0; i < 9; ++i) REQUIRE(shifted[i] == Approx(base[i] + c).margin(1e-10));
  }
}

TEST_CASE("case 1: worked examples", "[model]") {
  SECTION("J=-1, Delta=1: xi pair and full multiset") {
    const AnalyticSpectrum s = analytic_spectrum_case1({-1, 0, 1, 0});
    REQUIRE(s.xi_plus == Approx(-1.0).margin(1e-12));
    REQUIRE(s.xi_minus == Approx(2.0).margin(1e-12));
    std::vector<double> energies;
    for (const auto& l : s.levels) energies.push_back(l.energy);
    require_multiset(sorted_eigenvalues(build_hamiltonian({-1, 0, 1, 0})), energies, 1e-10);
  }

  SECTION("J=1, Delta=1: |Phi-> amplitudes (2,-2,2)/sqrt(12), energy -2") {
    const AnalyticSpectrum s = analytic_spectrum_case1({1, 0, 1, 0});
    REQUIRE(s.eta_minus == Approx(-2.0).margin(1e-12));
    const AnalyticLevel& phi_minus = level(s, "|Phi->");
    REQUIRE(phi_minus.energy == Approx(-2.0).margin(1e-12));
    const double a = 2.0 / std::sqrt(12.0);
    REQUIRE(std::abs(phi_minus.state(2) - Complex{a, 0}) < 1e-12);
    REQUIRE(std::abs(phi_minus.state(4) - Complex{-a, 0}) < 1e-12);
    REQUIRE(std::abs(phi_minus.state(6) - Complex{a, 0}) < 1e-12);
  }

  SECTION("K != 0 is rejected") {
    REQUIRE_THROWS_AS(analytic_spectrum_case1({1, 0.5, 1, 0}), CaseMismatch);
  }
}

TEST_CASE("case 1: residuals, multiset match, orthogonality (random sample)", "[model]") {
  auto gen = rng(203);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (int trial = 0; trial < 100; ++trial) {
    const HamiltonianParams p{u(gen), 0.0, u(gen), u(gen)};
    const AnalyticSpectrum s = analytic_spectrum_case1(p);
    REQUIRE(s.levels.size() == 9);

    std::vector<double> analytic;
    for (const auto& l : s.levels) {
      REQUIRE(l.residual <= 1e-9);
      REQUIRE(std::abs(l.state.norm() - 1.0) < 1e-12);
      analytic.push_back(l.energy);
    }
    require_multiset(sorted_eigenvalues(build_hamiltonian(p)), analytic, 1e-9);

    // Eigenvectors at distinct eigenvalues must be orthogonal.
    for (size_t i = 0; i < s.levels.size(); ++i)
      for (size_t j = i + 1; j < s.levels.size(); ++j)
        if (std::abs(s.levels[i].energy - s.levels[j].energy) > 1e-9)
          REQUIRE(std::abs(s.levels[i].state.dot(s.levels[j].state)) < 1e-10);
  }
}

TEST_CASE("case 2: reduces to case 1 at K=0", "[model]") {
  auto gen = rng(204);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (int trial = 0; trial < 50; ++trial) {
    const HamiltonianParams p{u(gen), 0.0, u(gen), u(gen)};
    const AnalyticSpectrum c1 = analytic_spectrum_case1(p);
    const AnalyticSpectrum c2 = analytic_spectrum_case2(p);
    REQUIRE_FALSE(c2.degenerate_coupling);

    std::vector<double> e1, e2;
    for (const auto& l : c1.levels) e1.push_back(l.energy);
    for (const auto& l : c2.levels) {
      e2.push_back(l.energy);
      REQUIRE(l.residual <= 1e-10);
    }
    std::sort(e1.begin(), e1.end());
    std::sort(e2.begin(), e2.end());
    for (int i = 0; i < 9; ++i) REQUIRE(e2[i] == Approx(e1[i]).margin(1e-10));
  }
}

TEST_CASE("case 2: central closed form fails numeric cross-validation", "[model]") {
  SECTION("pure biquadratic point: zeta- is wrong by 2, zeta+ is right") {
    const AnalyticSpectrum s = analytic_spectrum_case2({0, 1, 0, 0});
    REQUIRE(s.degenerate_coupling);  // J - K*Delta = 0 here
    REQUIRE(s.zeta_plus / 2 == Approx(2.0).margin(1e-12));
    REQUIRE(s.zeta_minus / 2 == Approx(0.0).margin(1e-12));

    const AnalyticLevel& hi = level(s, "|Phi+>");
    const AnalyticLevel& lo = level(s, "|Phi->");
    REQUIRE(hi.residual <= 1e-10);      // printed 2 matches the spectrum
    REQUIRE(lo.residual == Approx(2.0).margin(1e-9));  // printed 0, true 2
    REQUIRE(lo.flagged());
    REQUIRE_FALSE(hi.flagged());

    for (const auto& l : s.levels)
      if (l.label != "|Phi+>" && l.label != "|Phi->") REQUIRE(l.residual <= 1e-10);
  }

  SECTION("generic K != 0: both central rows flagged, others clean") {
    const AnalyticSpectrum s = analytic_spectrum_case2({-1, 0.7, 1.3, 0.4});
    REQUIRE_FALSE(s.degenerate_coupling);
    REQUIRE(level(s, "|Phi+>").flagged());
    REQUIRE(level(s, "|Phi->").flagged());
    for (const auto& l : s.levels)
      if (l.label != "|Phi+>" && l.label != "|Phi->") REQUIRE(l.residual <= 1e-10);
  }

  SECTION("degenerate coupling off the K axis (J=K=Delta=1)") {
    const AnalyticSpectrum s = analytic_spectrum_case2({1, 1, 1, 0.2});
    REQUIRE(s.degenerate_coupling);
    // Central block is 2K·I: numeric vectors orthonormal, printed energies
    // pair descending; the lower printed energy is off by 2K.
    const AnalyticLevel& hi = level(s, "|Phi+>");
    const AnalyticLevel& lo = level(s, "|Phi->");
    REQUIRE(std::abs(hi.state.dot(lo.state)) < 1e-10);
    REQUIRE(hi.residual <= 1e-10);
    REQUIRE(lo.residual == Approx(2.0).margin(1e-9));
  }
}

TEST_CASE("case 2: trivial substitution and exact central oracle", "[model]") {
  const AnalyticSpectrum s = analytic_spectrum_case2({-1, -1, -1, 0});
  REQUIRE(level(s, "|Psi1+>").energy == Approx(-2.0).margin(1e-12));
  REQUIRE(level(s, "|Psi1->").energy == Approx(0.0).margin(1e-12));

  // Independent derivation vs numeric spectrum on the coupled subspace,
  // over random parameters (including the degenerate line).
  auto gen = rng(205);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (int trial = 0; trial < 40; ++trial) {
    HamiltonianParams p{u(gen), u(gen), u(gen), u(gen)};
    if (trial % 5 == 0) p.J = p.K * p.Delta;  // force degenerate coupling
    auto [ep, em] = exact_central_pair(p);
    if (ep < em) std::swap(ep, em);

    const ComplexMatrix h = build_hamiltonian(p);
    const ComplexVector w1 =
        (detail::basis_ket(0, 2) + detail::basis_ket(2, 0)) / std::sqrt(2.0);
    const ComplexVector w2 = detail::basis_ket(1, 1);
    ComplexMatrix block(2, 2);
    block << w1.dot(h * w1), w1.dot(h * w2), w2.dot(h * w1), w2.dot(h * w2);
    const Spectrum nb = hermitian_eigen(block);
    REQUIRE(nb.values(1) == Approx(ep).margin(1e-10));
    REQUIRE(nb.values(0) == Approx(em).margin(1e-10));
  }
}
