// Independent reference implementations used only by the tests. They rebuild
// the machines from their geometric description (anchor points, leg end
// points) and rely on Eigen's general solvers, sharing no code with the
// library's kinematics or eigensolver.
#ifndef DEXCUBE_TESTS_ORACLE_HPP
#define DEXCUBE_TESTS_ORACLE_HPP

#include <array>
#include <cmath>
#include <optional>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

struct Geometry {
  bool orthoglide = true;
  double L = 1.0;
  double R = 0.0;  // base circumradius (UraneSX)
  double r = 0.0;  // platform circumradius (UraneSX)
  std::array<int, 3> s{-1, -1, -1};
  std::array<double, 3> phi{0.0, 2.0 * M_PI / 3.0, 4.0 * M_PI / 3.0};
};

inline Geometry orthoglide(std::array<int, 3> s = {-1, -1, -1}) { return {true, 1.0, 0.0, 0.0, s}; }

inline Geometry uranesx(double lambda, std::array<int, 3> s = {1, 1, 1}) {
  return {false, 1.0, 7.0 / 13.0 + lambda, 3.0 / 26.0, s};
}

inline Eigen::Vector3d axis(const Geometry& g, int i) {
  return g.orthoglide ? Eigen::Vector3d::Unit(i) : Eigen::Vector3d::UnitZ();
}

// Point on the prismatic axis of leg i at joint value 0, and the platform joint B_i.
inline Eigen::Vector3d base_point(const Geometry& g, int i) {
  if (g.orthoglide) return Eigen::Vector3d::Zero();
  return {g.R * std::cos(g.phi[i]), g.R * std::sin(g.phi[i]), 0.0};
}

inline Eigen::Vector3d platform_point(const Geometry& g, int i, const Eigen::Vector3d& p) {
  if (g.orthoglide) return p;
  return p + g.r * Eigen::Vector3d(std::cos(g.phi[i]), std::sin(g.phi[i]), 0.0);
}

// Solves |B_i - (base_i + rho e_i)| = L for rho on the branch with sign s_i.
inline std::optional<Eigen::Vector3d> joints(const Geometry& g, const Eigen::Vector3d& p) {
  Eigen::Vector3d rho;
  for (int i = 0; i < 3; ++i) {
    const Eigen::Vector3d d = platform_point(g, i, p) - base_point(g, i);
    const Eigen::Vector3d e = axis(g, i);
    const double along = d.dot(e);
    const double off2 = (d - along * e).squaredNorm();
    const double rad = g.L * g.L - off2;
    if (rad < 0.0) return std::nullopt;
    rho[i] = along + g.s[i] * std::sqrt(rad);
  }
  return rho;
}

struct Legs {
  Eigen::Matrix3d A;    // rows (b_i - a_i)^T
  Eigen::Vector3d eta;  // (b_i - a_i) . e_i
};

inline std::optional<Legs> legs(const Geometry& g, const Eigen::Vector3d& p) {
  const auto rho = joints(g, p);
  if (!rho) return std::nullopt;
  Legs out;
  for (int i = 0; i < 3; ++i) {
    const Eigen::Vector3d a = base_point(g, i) + (*rho)[i] * axis(g, i);
    const Eigen::Vector3d v = platform_point(g, i, p) - a;
    out.A.row(i) = v.transpose();
    out.eta[i] = v.dot(axis(g, i));
  }
  return out;
}

// Ascending eigenvalues of J J^T, J = A^{-1} diag(eta); empty when unreachable or singular.
inline std::optional<Eigen::Vector3d> sigmas(const Geometry& g, const Eigen::Vector3d& p) {
  const auto l = legs(g, p);
  if (!l || std::abs(l->A.determinant()) < 1e-12) return std::nullopt;
  const Eigen::Matrix3d J = l->A.inverse() * l->eta.asDiagonal();
  return Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d>(J * J.transpose(), Eigen::EigenvaluesOnly).eigenvalues();
}

inline std::optional<Eigen::Vector3d> psis(const Geometry& g, const Eigen::Vector3d& p) {
  const auto s = sigmas(g, p);
  if (!s) return std::nullopt;
  return s->cwiseMax(0.0).cwiseSqrt().eval();
}

inline bool good(const Geometry& g, const Eigen::Vector3d& p, double psi_min, double psi_max) {
  const auto v = psis(g, p);
  return v && v->minCoeff() >= psi_min && v->maxCoeff() <= psi_max;
}

// Violates a bound (unreachable and singular poses count as violations).
inline bool bad(const Geometry& g, const Eigen::Vector3d& p, double psi_min, double psi_max) {
  return !good(g, p, psi_min, psi_max);
}

using Quad = __float128;
using Quad3 = std::array<std::array<Quad, 3>, 3>;

inline Quad det3(const Quad3& a) {
  return a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1]) - a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0]) +
         a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0]);
}

// Coefficients c0, c1, c2 of det(s I - M) = s^3 + c2 s^2 + c1 s + c0, in binary128.
inline std::array<Quad, 3> char_coefficients(const Eigen::Matrix3d& m) {
  Quad3 q;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) q[i][j] = m(i, j);
  const Quad tr = q[0][0] + q[1][1] + q[2][2];
  Quad minors = 0;
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j) minors += q[i][i] * q[j][j] - q[i][j] * q[j][i];
  return {-det3(q), minors, -tr};
}

// Roots of det(M - s I) from the companion matrix of the characteristic
// cubic, each polished by Newton steps on the cubic evaluated in binary128.
inline Eigen::Vector3cd companion_roots(const Eigen::Matrix3d& m) {
  const std::array<Quad, 3> c = char_coefficients(m);
  Eigen::Matrix3d comp;
  comp << 0, 0, -double(c[0]), 1, 0, -double(c[1]), 0, 1, -double(c[2]);
  Eigen::Vector3cd roots = Eigen::EigenSolver<Eigen::Matrix3d>(comp, false).eigenvalues();
  for (int i = 0; i < 3; ++i) {
    if (roots[i].imag() != 0.0) continue;
    Quad x = roots[i].real();
    for (int step = 0; step < 3; ++step) {
      const Quad f = ((x + c[2]) * x + c[1]) * x + c[0];
      const Quad df = (3 * x + 2 * c[2]) * x + c[1];
      if (df == 0) break;
      x -= f / df;
    }
    roots[i] = double(x);
  }
  return roots;
}

// det(J J^T - sigma I) det(A)^2 with J = A^{-1} diag(eta), evaluated in
// binary128 through the adjugate: J = adj(A) diag(eta) / det(A).
inline double scaled_char_det(const Legs& legs, double sigma) {
  Quad3 a;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) a[i][j] = legs.A(i, j);
  const Quad det_a = det3(a);
  Quad3 j{};
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) {
      // adj(A)(r, c) = cofactor(c, r)
      const int r0 = (c + 1) % 3, r1 = (c + 2) % 3, c0 = (r + 1) % 3, c1 = (r + 2) % 3;
      const Quad cof = a[r0][c0] * a[r1][c1] - a[r0][c1] * a[r1][c0];
      j[r][c] = cof * Quad(legs.eta[c]) / det_a;
    }
  Quad3 m{};
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) {
      for (int k = 0; k < 3; ++k) m[r][c] += j[r][k] * j[c][k];
      if (r == c) m[r][c] -= sigma;
    }
  return double(det3(m) * det_a * det_a);
}

// Largest all-good axis-aligned cube (square for 2D) on a lattice of the
// given pitch over [-L, L]^d, found with the classic "largest all-ones
// sub-cube" recurrence. Returns the edge length (n - 1) * pitch of the
// largest lattice cube with all n^d sample points good, and its centre.
struct GridCube {
  double edge = 0.0;
  Eigen::Vector3d center = Eigen::Vector3d::Zero();
};

inline GridCube grid_cube(const Geometry& g, double pitch, double psi_min, double psi_max) {
  const int n = static_cast<int>(std::lround(2.0 * g.L / pitch)) + 1;
  const int d = g.orthoglide ? 3 : 2;
  const int nz = d == 3 ? n : 1;
  auto coord = [&](int i) { return -g.L + pitch * i; };
  std::vector<int> run(static_cast<std::size_t>(n) * n * nz, 0);
  auto at = [&](int i, int j, int k) -> int& { return run[(static_cast<std::size_t>(k) * n + j) * n + i]; };
  GridCube best;
  int best_side = 0;
  for (int k = 0; k < nz; ++k)
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i) {
        const Eigen::Vector3d p(coord(i), coord(j), d == 3 ? coord(k) : 0.0);
        if (!good(g, p, psi_min, psi_max)) continue;
        int side = 1;
        if (i > 0 && j > 0 && (d == 2 || k > 0)) {
          side = 1 + std::min({at(i - 1, j, k), at(i, j - 1, k), at(i - 1, j - 1, k)});
          if (d == 3)
            side = 1 + std::min({side - 1, at(i, j, k - 1), at(i - 1, j, k - 1), at(i, j - 1, k - 1),
                                 at(i - 1, j - 1, k - 1)});
        }
        at(i, j, k) = side;
        if (side > best_side) {
          best_side = side;
          const double half = 0.5 * pitch * (side - 1);
          best.center = Eigen::Vector3d(coord(i) - half, coord(j) - half, d == 3 ? coord(k) - half : 0.0);
        }
      }
  best.edge = pitch * (best_side - 1);
  return best;
}

}  // namespace oracle

#endif  // DEXCUBE_TESTS_ORACLE_HPP
