#include "beambounds/eigensolve.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

#include "beambounds/errors.hpp"

namespace beambounds {
namespace {

void check_request(std::size_t n, std::size_t m) {
  if (m < 1 || m > n) throw InvalidArgument("smallest_eigenpairs: need 1 <= m <= dimension");
}

// Deterministic sign: the entry of largest magnitude is positive.
void normalize_sign(Eigen::Ref<Eigen::VectorXd> x) {
  Eigen::Index imax = 0;
  x.cwiseAbs().maxCoeff(&imax);
  if (x[imax] < 0.0) x = -x;
}

struct PairResidual {
  double absolute;
  double relative;
  double floor;

  // The floor is an estimate; iterations stagnate within a small multiple of it.
  bool accepted(double rtol) const { return relative <= std::max(rtol, 4.0 * floor); }
};

PairResidual pair_residual(const Eigen::VectorXd& ax, const Eigen::VectorXd& bx, const Eigen::VectorXd& abs_ax,
                           const Eigen::VectorXd& abs_bx, double lambda) {
  constexpr double unit_roundoff = std::numeric_limits<double>::epsilon() / 2;
  const double lam = std::abs(lambda);
  const double denom = ax.norm() + lam * bx.norm();
  const double r = (ax - lambda * bx).norm();
  const double scale = denom > 0.0 ? denom : 1.0;
  return {r, r / scale, unit_roundoff * (abs_ax.norm() + lam * abs_bx.norm()) / scale};
}

PairResidual pair_residual(const SymmetricBandMatrix& a, const SymmetricBandMatrix& b, const Eigen::VectorXd& x,
                           double lambda) {
  return pair_residual(a.multiply(x), b.multiply(x), a.multiply_abs(x), b.multiply_abs(x), lambda);
}

void record(EigenResult& result, const PairResidual& r) {
  result.residuals.push_back(r.absolute);
  result.relative_residuals.push_back(r.relative);
  result.rounding_floors.push_back(r.floor);
}

}  // namespace

EigenResult smallest_eigenpairs_dense(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b, std::size_t m,
                                      const SolverOptions& options) {
  const auto n = a.rows();
  if (a.cols() != n || b.rows() != n || b.cols() != n) throw InvalidArgument("dense eigensolve: shape mismatch");
  check_request(static_cast<std::size_t>(n), m);

  Eigen::LLT<Eigen::MatrixXd> chol_a(a);
  if (chol_a.info() != Eigen::Success) throw FactorizationFailure("A is not numerically positive definite");
  if (Eigen::LLT<Eigen::MatrixXd>(b).info() != Eigen::Success)
    throw FactorizationFailure("B is not numerically positive definite");

  // C = L⁻¹ B L⁻ᵀ; the largest eigenvalues of C are the reciprocals of the
  // smallest eigenvalues of the pencil.
  const auto l = chol_a.matrixL();
  Eigen::MatrixXd c = l.solve(b);
  c = l.solve(c.transpose().eval());
  c = 0.5 * (c + c.transpose()).eval();

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(c);
  if (es.info() != Eigen::Success) throw NoConvergence("dense symmetric eigensolver failed", INFINITY);

  EigenResult result;
  result.method = "dense";
  result.iterations = 1;
  result.eigenvectors.resize(n, static_cast<Eigen::Index>(m));
  for (std::size_t i = 0; i < m; ++i) {
    const Eigen::Index col = n - 1 - static_cast<Eigen::Index>(i);
    const double mu = es.eigenvalues()[col];
    if (!(mu > 0.0)) throw FactorizationFailure("pencil has a non-positive eigenvalue");
    Eigen::VectorXd x = chol_a.matrixU().solve(es.eigenvectors().col(col));
    x /= std::sqrt(x.dot(b * x));
    normalize_sign(x);
    result.eigenvalues.push_back(1.0 / mu);
    result.eigenvectors.col(static_cast<Eigen::Index>(i)) = x;
  }

  const Eigen::MatrixXd abs_a = a.cwiseAbs(), abs_b = b.cwiseAbs();
  double worst = 0.0;
  bool ok = true;
  for (std::size_t i = 0; i < m; ++i) {
    const Eigen::VectorXd x = result.eigenvectors.col(static_cast<Eigen::Index>(i));
    const Eigen::VectorXd ax = x.cwiseAbs();
    const PairResidual r = pair_residual(a * x, b * x, abs_a * ax, abs_b * ax, result.eigenvalues[i]);
    record(result, r);
    worst = std::max(worst, r.relative);
    ok = ok && r.accepted(options.rtol);
  }
  if (!ok) throw NoConvergence("dense eigensolve missed the residual target", worst);
  return result;
}

EigenResult smallest_eigenpairs_shift_invert(const SymmetricBandMatrix& a, const SymmetricBandMatrix& b,
                                             std::size_t m, const SolverOptions& options) {
  const std::size_t n = a.size();
  if (b.size() != n) throw InvalidArgument("shift-invert eigensolve: shape mismatch");
  check_request(n, m);

  const BandCholesky solver(a);
  BandCholesky{b};

  const std::size_t block = std::min(n, std::max(2 * m, m + 8));
  const auto nn = static_cast<Eigen::Index>(n);
  Eigen::MatrixXd x(nn, static_cast<Eigen::Index>(block));
  std::mt19937_64 rng(20240917);
  std::uniform_real_distribution<double> uniform(-1.0, 1.0);
  for (Eigen::Index j = 0; j < x.cols(); ++j)
    for (Eigen::Index i = 0; i < nn; ++i) x(i, j) = uniform(rng);

  std::vector<double> ritz(block, 0.0);
  std::size_t locked = 0;
  double best = INFINITY;

  // B-orthonormalize columns [from, block) against all previous columns.
  auto orthonormalize = [&](std::size_t from) {
    for (std::size_t j = from; j < block; ++j) {
      const auto cj = static_cast<Eigen::Index>(j);
      for (int pass = 0; pass < 2; ++pass) {
        const Eigen::VectorXd bxj = b.multiply(x.col(cj));
        for (std::size_t k = 0; k < j; ++k) {
          const auto ck = static_cast<Eigen::Index>(k);
          x.col(cj) -= x.col(ck).dot(bxj) * x.col(ck);
        }
      }
      double norm = std::sqrt(x.col(cj).dot(b.multiply(x.col(cj))));
      if (!(norm > 1e-300)) {
        for (Eigen::Index i = 0; i < nn; ++i) x(i, cj) = uniform(rng);
        --j;
        continue;
      }
      x.col(cj) /= norm;
    }
  };

  orthonormalize(0);
  int it = 0;
  for (; it < options.max_iterations && locked < m; ++it) {
    for (std::size_t j = locked; j < block; ++j) {
      const auto cj = static_cast<Eigen::Index>(j);
      x.col(cj) = solver.solve(b.multiply(x.col(cj)));
    }
    orthonormalize(locked);

    // Rayleigh–Ritz on the active block (B-orthonormal, B-orthogonal to locked).
    const std::size_t active = block - locked;
    const auto na = static_cast<Eigen::Index>(active);
    const auto c0 = static_cast<Eigen::Index>(locked);
    Eigen::MatrixXd ax(nn, na);
    for (Eigen::Index j = 0; j < na; ++j) ax.col(j) = a.multiply(x.col(c0 + j));
    Eigen::MatrixXd h = x.middleCols(c0, na).transpose() * ax;
    h = 0.5 * (h + h.transpose()).eval();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h);
    x.middleCols(c0, na) = (x.middleCols(c0, na) * es.eigenvectors()).eval();
    for (Eigen::Index j = 0; j < na; ++j) ritz[locked + static_cast<std::size_t>(j)] = es.eigenvalues()[j];

    double worst = 0.0;
    while (locked < m) {
      const auto cj = static_cast<Eigen::Index>(locked);
      const PairResidual r = pair_residual(a, b, x.col(cj), ritz[locked]);
      if (!r.accepted(options.rtol)) {
        worst = r.relative;
        break;
      }
      ++locked;
    }
    if (locked < m) best = std::min(best, worst);
  }
  if (locked < m) throw NoConvergence("shift-invert iteration budget exhausted", best);

  EigenResult result;
  result.method = "shift-invert";
  result.iterations = it;
  std::vector<std::size_t> order(m);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t p, std::size_t q) { return ritz[p] < ritz[q]; });
  result.eigenvectors.resize(nn, static_cast<Eigen::Index>(m));
  for (std::size_t i = 0; i < m; ++i) {
    Eigen::VectorXd xi = x.col(static_cast<Eigen::Index>(order[i]));
    normalize_sign(xi);
    result.eigenvalues.push_back(ritz[order[i]]);
    record(result, pair_residual(a, b, xi, ritz[order[i]]));
    result.eigenvectors.col(static_cast<Eigen::Index>(i)) = xi;
  }
  return result;
}

EigenResult smallest_eigenpairs(const SymmetricBandMatrix& a, const SymmetricBandMatrix& b, std::size_t m,
                                const SolverOptions& options) {
  const bool dense = options.method == SolverMethod::Dense ||
                     (options.method == SolverMethod::Auto && a.size() <= options.dense_limit);
  if (dense) return smallest_eigenpairs_dense(a.to_dense(), b.to_dense(), m, options);
  return smallest_eigenpairs_shift_invert(a, b, m, options);
}

EigenResult smallest_eigenpairs(const AssembledSystem& system, std::size_t m, const SolverOptions& options) {
  return smallest_eigenpairs(system.bending, system.geometric, m, options);
}

namespace {

template <class MultiplyA, class MultiplyB, class MultiplyAbsA, class MultiplyAbsB>
ResidualReport residual_report(std::size_t n, MultiplyA&& mul_a, MultiplyB&& mul_b, MultiplyAbsA&& abs_a,
                               MultiplyAbsB&& abs_b, const EigenResult& result, double rtol) {
  const std::size_t m = result.eigenvalues.size();
  if (static_cast<std::size_t>(result.eigenvectors.rows()) != n ||
      static_cast<std::size_t>(result.eigenvectors.cols()) != m)
    throw StaleResult("eigen result does not match the system dimensions");
  ResidualReport report;
  report.rtol = rtol;
  std::vector<Eigen::VectorXd> bx(m);
  bool ok = true, near = true;
  for (std::size_t i = 0; i < m; ++i) {
    const Eigen::VectorXd xi = result.eigenvectors.col(static_cast<Eigen::Index>(i));
    bx[i] = mul_b(xi);
    const PairResidual r = pair_residual(mul_a(xi), bx[i], abs_a(xi), abs_b(xi), result.eigenvalues[i]);
    report.residuals.push_back(r.absolute);
    report.relative_residuals.push_back(r.relative);
    report.rounding_floors.push_back(r.floor);
    ok = ok && r.relative <= rtol;
    near = near && r.accepted(rtol);
  }
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      const double g = result.eigenvectors.col(static_cast<Eigen::Index>(i)).dot(bx[j]);
      report.orthonormality_defect = std::max(report.orthonormality_defect, std::abs(g - (i == j ? 1.0 : 0.0)));
    }
  report.passed = ok && report.orthonormality_defect <= rtol;
  report.within_rounding_floor = near && report.orthonormality_defect <= rtol;
  return report;
}

}  // namespace

ResidualReport verify_residuals(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b, const EigenResult& result,
                                double rtol) {
  if (a.rows() != b.rows()) throw StaleResult("A and B dimensions differ");
  return residual_report(
      static_cast<std::size_t>(a.rows()), [&](const Eigen::VectorXd& x) -> Eigen::VectorXd { return a * x; },
      [&](const Eigen::VectorXd& x) -> Eigen::VectorXd { return b * x; },
      [&](const Eigen::VectorXd& x) -> Eigen::VectorXd { return a.cwiseAbs() * x.cwiseAbs(); },
      [&](const Eigen::VectorXd& x) -> Eigen::VectorXd { return b.cwiseAbs() * x.cwiseAbs(); }, result, rtol);
}

ResidualReport verify_residuals(const AssembledSystem& system, const EigenResult& result, double rtol) {
  return residual_report(
      system.dimension(), [&](const Eigen::VectorXd& x) { return system.bending.multiply(x); },
      [&](const Eigen::VectorXd& x) { return system.geometric.multiply(x); },
      [&](const Eigen::VectorXd& x) { return system.bending.multiply_abs(x); },
      [&](const Eigen::VectorXd& x) { return system.geometric.multiply_abs(x); }, result, rtol);
}

}  // namespace beambounds
