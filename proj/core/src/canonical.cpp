#include "nclass/canonical.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "nclass/measures.hpp"

namespace nclass::canonical {

namespace {

constexpr double kBracketFloor = 1e-12;   // below -this: locally nonclassical
constexpr double kDegenerateTol = 1e-12;  // all brackets this small: tie-break
constexpr double kResidualTarget = 1e-11;
constexpr double kConvergedResidual = 1e-9;
constexpr double kScaleMin = 1e-6, kScaleMax = 1e6;

double clamp_bracket(double x) {
  return (x < 0.0 && x > -kBracketFloor) ? 0.0 : x;
}

Eigen::Matrix2d rotation2(double theta) {
  Eigen::Matrix2d r;
  r << std::cos(theta), -std::sin(theta), std::sin(theta), std::cos(theta);
  return r;
}

StandardMoments swap_xp(const StandardMoments& m) {
  return StandardMoments{m.m2, m.m1, m.n2, m.n1, m.c2, m.c1};
}

// State of the squeezing search at a given (s_a, s_b).
struct Residuals {
  double f1 = 0.0;  // balance condition
  double f2 = 0.0;  // match condition
  double a1 = 0.0, a2 = 0.0, b1 = 0.0, b2 = 0.0;  // variance brackets
  double corr1 = 0.0, corr2 = 0.0;                // |c1'|, |c2'|
  bool in_domain = false;
};

Residuals eval_residuals(const StandardMoments& m, double s_a, double s_b) {
  Residuals r;
  const double half = kVacuumVariance;
  r.a1 = clamp_bracket(s_a * m.m1 - half);
  r.a2 = clamp_bracket(m.m2 / s_a - half);
  r.b1 = clamp_bracket(s_b * m.n1 - half);
  r.b2 = clamp_bracket(m.n2 / s_b - half);
  if (r.a1 < 0.0 || r.a2 < 0.0 || r.b1 < 0.0 || r.b2 < 0.0) return r;
  const double g = std::sqrt(s_a * s_b);
  r.corr1 = std::abs(m.c1) * g;
  r.corr2 = std::abs(m.c2) / g;
  r.f1 = r.a1 * r.b2 - r.b1 * r.a2;
  r.f2 = std::sqrt(r.a1 * r.b1) - std::sqrt(r.a2 * r.b2) - r.corr1 + r.corr2;
  r.in_domain = true;
  return r;
}

double residual_norm(const Residuals& r) {
  return std::max(std::abs(r.f1), std::abs(r.f2));
}

// Analytic Jacobian of (f1, f2) with respect to (log s_a, log s_b).
Eigen::Matrix2d jacobian(const Residuals& r) {
  const double half = kVacuumVariance;
  const double g1 = std::sqrt(std::max(r.a1 * r.b1, 1e-300));
  const double g2 = std::sqrt(std::max(r.a2 * r.b2, 1e-300));
  Eigen::Matrix2d j;
  j(0, 0) = (r.a1 + half) * r.b2 + r.b1 * (r.a2 + half);
  j(0, 1) = -(r.a1 * (r.b2 + half) + (r.b1 + half) * r.a2);
  const double corr_term = 0.5 * (r.corr1 + r.corr2);
  j(1, 0) = 0.5 * (r.b1 * (r.a1 + half) / g1 + r.b2 * (r.a2 + half) / g2) - corr_term;
  j(1, 1) = 0.5 * (r.a1 * (r.b1 + half) / g1 + r.a2 * (r.b2 + half) / g2) - corr_term;
  return j;
}

struct NewtonOutcome {
  double s_a = 1.0, s_b = 1.0;
  Residuals res;
  int iterations = 0;
  bool ok = false;
};

NewtonOutcome newton_solve(const StandardMoments& m, double s_a0, double s_b0,
                           double tol) {
  NewtonOutcome out;
  double ua = std::log(s_a0), ub = std::log(s_b0);
  Residuals cur = eval_residuals(m, std::exp(ua), std::exp(ub));
  if (!cur.in_domain) return out;

  for (int iter = 0; iter < 200; ++iter) {
    out.iterations = iter;
    if (residual_norm(cur) <= tol) {
      out.s_a = std::exp(ua);
      out.s_b = std::exp(ub);
      out.res = cur;
      out.ok = true;
      return out;
    }
    const Eigen::Matrix2d j = jacobian(cur);
    const double det = j(0, 0) * j(1, 1) - j(0, 1) * j(1, 0);
    if (!std::isfinite(det) || std::abs(det) < 1e-30) break;
    const double da = (-cur.f1 * j(1, 1) + cur.f2 * j(0, 1)) / det;
    const double db = (-cur.f2 * j(0, 0) + cur.f1 * j(1, 0)) / det;

    // Damped step: halve until the iterate stays in the domain and the
    // residual norm decreases.
    double lambda = 1.0;
    bool moved = false;
    for (int halvings = 0; halvings < 40; ++halvings, lambda *= 0.5) {
      const double na = ua + lambda * da, nb = ub + lambda * db;
      const double sa = std::exp(na), sb = std::exp(nb);
      if (sa < kScaleMin || sa > kScaleMax || sb < kScaleMin || sb > kScaleMax) continue;
      const Residuals trial = eval_residuals(m, sa, sb);
      if (!trial.in_domain) continue;
      if (residual_norm(trial) < residual_norm(cur)) {
        ua = na;
        ub = nb;
        cur = trial;
        moved = true;
        break;
      }
    }
    if (!moved) break;  // stalled
  }
  if (residual_norm(cur) <= tol) {
    out.s_a = std::exp(ua);
    out.s_b = std::exp(ub);
    out.res = cur;
    out.ok = true;
  }
  return out;
}

// Eliminates the balance condition: for fixed s_a the unique s_b with
// f1 = 0, from  a2 n1 s_b^2 + (a1 - a2)/2 s_b - a1 n2 = 0.
double balance_sb(const StandardMoments& m, double s_a) {
  const double half = kVacuumVariance;
  const double a1 = s_a * m.m1 - half;
  const double a2 = m.m2 / s_a - half;
  if (a1 <= 0.0 || a2 <= 0.0) return -1.0;
  const double qa = a2 * m.n1;
  const double qb = 0.5 * (a1 - a2);
  const double qc = -a1 * m.n2;
  const double disc = qb * qb - 4.0 * qa * qc;
  if (disc < 0.0 || qa <= 0.0) return -1.0;
  return (-qb + std::sqrt(disc)) / (2.0 * qa);
}

NewtonOutcome bisection_fallback(const StandardMoments& m, double tol) {
  NewtonOutcome out;
  const double half = kVacuumVariance;
  const double lo = std::max(kScaleMin, (1.0 + 1e-9) * half / m.m1);
  const double hi = std::min(kScaleMax, (1.0 - 1e-9) * m.m2 / half);
  if (!(lo < hi)) return out;

  auto phi = [&](double s_a, bool& valid) {
    valid = false;
    const double s_b = balance_sb(m, s_a);
    if (s_b <= 0.0) return 0.0;
    const Residuals r = eval_residuals(m, s_a, s_b);
    if (!r.in_domain) return 0.0;
    valid = true;
    return r.f2;
  };

  const int kScan = 400;
  double prev_sa = 0.0, prev_phi = 0.0;
  bool have_prev = false;
  double la = 0.0, lb = 0.0;
  bool bracketed = false;
  for (int i = 0; i <= kScan; ++i) {
    const double sa = lo * std::pow(hi / lo, static_cast<double>(i) / kScan);
    bool valid = false;
    const double p = phi(sa, valid);
    if (!valid) {
      have_prev = false;
      continue;
    }
    if (have_prev && ((prev_phi <= 0.0 && p >= 0.0) || (prev_phi >= 0.0 && p <= 0.0))) {
      la = prev_sa;
      lb = sa;
      bracketed = true;
      break;
    }
    prev_sa = sa;
    prev_phi = p;
    have_prev = true;
  }
  if (!bracketed) return out;

  double flo;
  {
    bool valid = false;
    flo = phi(la, valid);
  }
  for (int i = 0; i < 120; ++i) {
    const double mid = std::sqrt(la * lb);
    bool valid = false;
    const double fm = phi(mid, valid);
    if (!valid) break;
    if ((flo <= 0.0 && fm <= 0.0) || (flo >= 0.0 && fm >= 0.0)) {
      la = mid;
      flo = fm;
    } else {
      lb = mid;
    }
    out.iterations = i;
  }
  const double sa = std::sqrt(la * lb);
  const double sb = balance_sb(m, sa);
  if (sb <= 0.0) return out;

  // Polish with Newton from the bracketed point.
  NewtonOutcome polished = newton_solve(m, sa, sb, tol);
  if (polished.ok) {
    polished.iterations += out.iterations;
    return polished;
  }
  out.res = eval_residuals(m, sa, sb);
  out.s_a = sa;
  out.s_b = sb;
  out.ok = out.res.in_domain && residual_norm(out.res) <= kConvergedResidual;
  return out;
}

StandardMoments squeezed_moments(const StandardMoments& m, double s_a, double s_b) {
  const double g = std::sqrt(s_a * s_b);
  return StandardMoments{s_a * m.m1, m.m2 / s_a, s_b * m.n1,
                         m.n2 / s_b, g * m.c1,   m.c2 / g};
}

CanonicalResult pack_result(const StandardMoments& m, const NewtonOutcome& root) {
  CanonicalResult result;
  result.moments = squeezed_moments(m, root.s_a, root.s_b);
  result.transform = LocalSymplectic::squeeze(root.s_a, root.s_b);
  result.residual_balance = root.res.f1;
  result.residual_match = root.res.f2;
  result.iterations = root.iterations;
  result.converged = root.ok && residual_norm(root.res) < kConvergedResidual;
  if (result.moments.c1 < result.moments.c2) {
    result.moments = swap_xp(result.moments);
    result.transform = compose(LocalSymplectic::xp_swap(), result.transform);
  }
  return result;
}

}  // namespace

std::pair<StandardMoments, LocalSymplectic> reduce_to_standard_form(
    const CovarianceMatrix& sigma) {
  const Eigen::Matrix4d& s = sigma.matrix();

  double off_standard = 0.0;
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) {
      if ((i == 0 && j == 2) || (i == 1 && j == 3)) continue;
      off_standard = std::max(off_standard, std::abs(s(i, j)));
    }
  const double min_var = std::min({s(0, 0), s(1, 1), s(2, 2), s(3, 3)});
  // Pass-through only for states the squeezing solver accepts as-is; a
  // sub-vacuum local variance means the local nonclassicality still has to
  // be squeezed away by the isotropization step below.
  if (off_standard < 1e-14 && min_var >= kVacuumVariance - kBracketFloor) {
    StandardMoments m{s(0, 0), s(1, 1), s(2, 2), s(3, 3), s(0, 2), s(1, 3)};
    if (m.c1 >= m.c2) return {m, LocalSymplectic::identity()};
    return {swap_xp(m), LocalSymplectic::xp_swap()};
  }

  // (i) Per-mode rotation + squeeze makes each local block isotropic.
  auto isotropize = [](const Eigen::Matrix2d& block) {
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(block);
    Eigen::Matrix2d rot = es.eigenvectors();
    if (rot.determinant() < 0.0) rot.col(1) *= -1.0;
    const double lam1 = es.eigenvalues()(0), lam2 = es.eigenvalues()(1);
    const double z = std::pow(lam2 / lam1, 0.25);
    Eigen::Matrix2d zm = Eigen::Matrix2d::Zero();
    zm(0, 0) = z;
    zm(1, 1) = 1.0 / z;
    return Eigen::Matrix2d(zm * rot.transpose());
  };
  const LocalSymplectic iso(isotropize(s.block<2, 2>(0, 0)),
                            isotropize(s.block<2, 2>(2, 2)));
  const Eigen::Matrix4d sigma1 =
      iso.as_matrix() * s * iso.as_matrix().transpose();

  // (ii) Rotations diagonalize the cross block (2x2 SVD restricted to
  // rotations; the second diagonal entry carries the sign of the
  // determinant, so the result satisfies c1 >= |c2|).
  const Eigen::Matrix2d cross = sigma1.block<2, 2>(0, 2);
  LocalSymplectic rot = LocalSymplectic::identity();
  if (cross.cwiseAbs().maxCoeff() > 1e-15) {
    const double e = 0.5 * (cross(0, 0) + cross(1, 1));
    const double f = 0.5 * (cross(0, 0) - cross(1, 1));
    const double g = 0.5 * (cross(1, 0) + cross(0, 1));
    const double h = 0.5 * (cross(1, 0) - cross(0, 1));
    const double diff = std::atan2(h, e);  // u - v
    const double sum = std::atan2(g, f);   // u + v
    const double u = 0.5 * (sum + diff), v = 0.5 * (sum - diff);
    rot = LocalSymplectic(rotation2(-u), rotation2(-v));
  }
  const Eigen::Matrix4d sigma2 =
      rot.as_matrix() * sigma1 * rot.as_matrix().transpose();

  double residue = 0.0;
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) {
      if ((i == 0 && j == 2) || (i == 1 && j == 3)) continue;
      residue = std::max(residue, std::abs(sigma2(i, j)));
    }
  if (residue > 1e-9) {
    std::ostringstream msg;
    msg << "standard-form reduction failed, residual off-standard entry " << residue;
    throw std::runtime_error(msg.str());
  }

  StandardMoments m{sigma2(0, 0), sigma2(1, 1), sigma2(2, 2),
                    sigma2(3, 3), sigma2(0, 2), sigma2(1, 3)};
  return {m, compose(rot, iso)};
}

CanonicalResult solve_squeezings(const StandardMoments& m) {
  require_valid(m);
  if (m.c1 < m.c2)
    throw std::invalid_argument("solve_squeezings: requires c1 >= c2");

  const double half = kVacuumVariance;
  const std::array<double, 4> brackets{m.m1 - half, m.m2 - half, m.n1 - half,
                                       m.n2 - half};
  for (double b : brackets) {
    if (b < -kBracketFloor)
      throw std::domain_error(
          "solve_squeezings: local variance below vacuum; input is locally "
          "nonclassical and must be reduced to standard form first");
  }

  // Degenerate manifold: every bracket vanishes, any squeezing works.
  bool degenerate = true;
  for (double b : brackets) degenerate = degenerate && std::abs(b) <= kDegenerateTol;
  if (degenerate) {
    NewtonOutcome root;
    root.res = eval_residuals(m, 1.0, 1.0);
    root.ok = true;
    return pack_result(m, root);
  }

  const double scale =
      std::max(1.0, (m.m1 + m.m2 + m.n1 + m.n2) * (m.m1 + m.m2 + m.n1 + m.n2));
  const double tol = kResidualTarget * scale * 1e-2;

  NewtonOutcome primary = newton_solve(m, 1.0, 1.0, tol);
  if (!primary.ok) {
    primary = bisection_fallback(m, tol);
    if (!primary.ok) {
      const Residuals at_unity = eval_residuals(m, 1.0, 1.0);
      std::ostringstream msg;
      msg << "solve_squeezings: no root found in [1e-6, 1e6]; residuals at unity ("
          << at_unity.f1 << ", " << at_unity.f2 << ")";
      throw std::runtime_error(msg.str());
    }
  }

  CanonicalResult result = pack_result(m, primary);

  // Guard against multiple roots with conflicting classifications: restart
  // from spread points and compare the P-positivity verdict of every distinct
  // root found.
  const double lo_a = std::max(kScaleMin, (1.0 + 1e-6) * half / m.m1);
  const double hi_a = std::min(kScaleMax, (1.0 - 1e-6) * m.m2 / half);
  const double lo_b = std::max(kScaleMin, (1.0 + 1e-6) * half / m.n1);
  const double hi_b = std::min(kScaleMax, (1.0 - 1e-6) * m.n2 / half);
  if (lo_a < hi_a && lo_b < hi_b) {
    const bool primary_verdict = measures::gaussian_p_positive(result.moments);
    for (double qa : {0.25, 0.75}) {
      for (double qb : {0.25, 0.75}) {
        const double sa = lo_a * std::pow(hi_a / lo_a, qa);
        const double sb = lo_b * std::pow(hi_b / lo_b, qb);
        const NewtonOutcome other = newton_solve(m, sa, sb, tol);
        if (!other.ok) continue;
        const bool same_root =
            std::abs(std::log(other.s_a / primary.s_a)) < 1e-6 &&
            std::abs(std::log(other.s_b / primary.s_b)) < 1e-6;
        if (same_root) continue;
        const StandardMoments alt = squeezed_moments(m, other.s_a, other.s_b);
        if (measures::gaussian_p_positive(alt) != primary_verdict)
          throw std::runtime_error(
              "solve_squeezings: distinct squeezing roots disagree on P positivity");
      }
    }
  }
  return result;
}

CanonicalResult canonicalize(const CovarianceMatrix& sigma) {
  auto [standard, reduction] = reduce_to_standard_form(sigma);
  CanonicalResult result = solve_squeezings(standard);
  result.transform = compose(result.transform, reduction);
  return result;
}

}  // namespace nclass::canonical
