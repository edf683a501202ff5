#pragma once
// Floating-point cross-check of the root-string Casimir formulas.
//
// The compact form is realised by matrices (su_n, so_m, sp_n, and g2 as the
// stabiliser of the octonion 3-form in so_7).  Everything downstream works
// in an orthonormal basis for -B, so ad matrices are skew and C_S is
// symmetric.  Root vectors come from eigenspaces of ad_T for a generic torus
// element T, which ties the realisation to the ambient root coordinates.

#include "bisym/casimir.hpp"
#include "bisym/catalog.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <string>
#include <vector>

namespace bisym {

struct oracle_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline bool oracle_supported(const LieFamily& g) {
  switch (g.family) {
    case Family::A:
    case Family::B:
    case Family::C:
    case Family::D: return g.rank <= 4;
    case Family::G2: return true;
    default: return false;
  }
}

struct CompactForm {
  LieFamily g;
  const RootSystem* sys = nullptr;
  int dim = 0;
  std::vector<Eigen::MatrixXd> ad;  // ad of the orthonormal basis element i
  Eigen::MatrixXd H;                // dim x rank, orthonormal basis of the torus
  Eigen::MatrixXd X, Y;             // dim x |R|, column per root; X_{-a} = X_a, Y_{-a} = -Y_a
  Eigen::MatrixXd killing;          // on (H, X_a, Y_a for a > 0)
  double jacobi_residual = 0, antisymmetry_residual = 0, killing_residual = 0;

  Eigen::MatrixXd ad_of(const Eigen::VectorXd& v) const {
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(dim, dim);
    for (int i = 0; i < dim; ++i)
      if (v[i] != 0) m += v[i] * ad[i];
    return m;
  }
  Eigen::VectorXd bracket(const Eigen::VectorXd& a, const Eigen::VectorXd& b) const { return ad_of(a) * b; }
  std::vector<std::string> labels() const {
    std::vector<std::string> out;
    for (int i = 0; i < H.cols(); ++i) out.push_back("iH" + std::to_string(i + 1));
    for (int a = 0; a < sys->size(); ++a)
      if (sys->positive(a)) {
        out.push_back("X" + to_string(sys->root(a)));
        out.push_back("Y" + to_string(sys->root(a)));
      }
    return out;
  }
};

namespace oracle_detail {

using MatC = Eigen::MatrixXcd;
using cd = std::complex<double>;

inline MatC unit(int n, int i, int j) {
  MatC m = MatC::Zero(n, n);
  m(i, j) = 1;
  return m;
}

inline std::vector<MatC> so_basis(int m) {
  std::vector<MatC> out;
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j) out.push_back(unit(m, i, j) - unit(m, j, i));
  return out;
}

inline std::vector<MatC> su_basis(int n) {
  const cd I(0, 1);
  std::vector<MatC> out;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      out.push_back(unit(n, i, j) - unit(n, j, i));
      out.push_back(I * (unit(n, i, j) + unit(n, j, i)));
    }
  for (int i = 0; i + 1 < n; ++i) out.push_back(I * (unit(n, i, i) - unit(n, i + 1, i + 1)));
  return out;
}

// [[A, B], [-conj B, conj A]], A in u(n), B symmetric
inline std::vector<MatC> sp_basis(int n) {
  const cd I(0, 1);
  std::vector<MatC> out;
  auto block = [&](const MatC& A, const MatC& B) {
    MatC m(2 * n, 2 * n);
    m << A, B, -B.conjugate(), A.conjugate();
    return m;
  };
  MatC Z = MatC::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      out.push_back(block(unit(n, i, j) - unit(n, j, i), Z));
      out.push_back(block(I * (unit(n, i, j) + unit(n, j, i)), Z));
    }
  for (int i = 0; i < n; ++i) out.push_back(block(I * unit(n, i, i), Z));
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      MatC S = unit(n, i, j) + unit(n, j, i);
      if (i == j) S = unit(n, i, i);
      out.push_back(block(Z, S));
      out.push_back(block(Z, I * S));
    }
  return out;
}

// octonion 3-form e123 + e145 + e167 + e246 - e257 - e347 - e356
inline double phi3(int a, int b, int c) {
  if (a == b || b == c || a == c) return 0;
  static const int terms[7][4] = {{0, 1, 2, 1},  {0, 3, 4, 1},  {0, 5, 6, 1}, {1, 3, 5, 1},
                                  {1, 4, 6, -1}, {2, 3, 6, -1}, {2, 4, 5, -1}};
  for (const auto& t : terms) {
    int idx[3] = {t[0], t[1], t[2]};
    int in[3] = {a, b, c};
    // sign of the permutation taking idx to in
    int perm[3], found = 0;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        if (in[i] == idx[j]) {
          perm[i] = j;
          ++found;
        }
    if (found != 3) continue;
    int inv = (perm[0] > perm[1]) + (perm[0] > perm[2]) + (perm[1] > perm[2]);
    return inv % 2 ? -t[3] : t[3];
  }
  return 0;
}

// action of A in so_7 on phi, as a vector over a < b < c
inline Eigen::VectorXd derive_phi(const Eigen::MatrixXd& A) {
  Eigen::VectorXd out(35);
  int k = 0;
  for (int a = 0; a < 7; ++a)
    for (int b = a + 1; b < 7; ++b)
      for (int c = b + 1; c < 7; ++c) {
        double s = 0;
        for (int d = 0; d < 7; ++d)
          s += A(d, a) * phi3(d, b, c) + A(d, b) * phi3(a, d, c) + A(d, c) * phi3(a, b, d);
        out[k++] = s;
      }
  return out;
}

inline std::vector<MatC> g2_basis() {
  auto so7 = so_basis(7);
  Eigen::MatrixXd M(35, so7.size());
  for (size_t i = 0; i < so7.size(); ++i) M.col(i) = derive_phi(so7[i].real());
  Eigen::FullPivLU<Eigen::MatrixXd> lu(M);
  Eigen::MatrixXd ker = lu.kernel();
  if (ker.cols() != 14) throw oracle_error("g2: stabiliser has dimension " + std::to_string(ker.cols()));
  std::vector<MatC> out;
  for (int c = 0; c < ker.cols(); ++c) {
    MatC m = MatC::Zero(7, 7);
    for (size_t i = 0; i < so7.size(); ++i) m += ker(i, c) * so7[i];
    out.push_back(m);
  }
  return out;
}

inline Eigen::VectorXd realify(const MatC& m) {
  const int n = static_cast<int>(m.size());
  Eigen::VectorXd v(2 * n);
  for (int i = 0; i < n; ++i) {
    v[i] = m.data()[i].real();
    v[n + i] = m.data()[i].imag();
  }
  return v;
}

// generic torus values: distinct |<a, v>| across positive roots
inline std::vector<double> generic_point(const RootSystem& sys) {
  const int d = sys.ambient_dim();
  for (int attempt = 0; attempt < 50; ++attempt) {
    std::vector<double> v(d);
    for (int i = 0; i < d; ++i) v[i] = std::sqrt(2.0 + 3.0 * i + 0.37 * attempt) + 0.11 * i * i;
    if (sys.family().family == Family::G2 || sys.family().family == Family::A) {
      double mean = 0;
      for (double x : v) mean += x / d;
      for (double& x : v) x -= mean;
    }
    std::vector<double> vals;
    for (int a = 0; a < sys.size(); ++a)
      if (sys.positive(a)) {
        double s = 0;
        for (int i = 0; i < d; ++i) s += to_double(sys.root(a)[i]) * v[i];
        vals.push_back(std::fabs(s));
      }
    std::sort(vals.begin(), vals.end());
    bool ok = vals.front() > 1e-2;
    for (size_t i = 1; i < vals.size(); ++i) ok = ok && vals[i] - vals[i - 1] > 1e-2;
    if (ok) return v;
  }
  throw oracle_error("no generic torus element found");
}

}  // namespace oracle_detail

inline CompactForm build_compact_form(const LieFamily& g) {
  using namespace oracle_detail;
  if (!oracle_supported(g)) throw invalid_input("numeric oracle: " + g.str() + " is outside the supported range");
  CompactForm F;
  F.g = g;
  F.sys = &root_system(g);
  const RootSystem& sys = *F.sys;
  const int r = g.rank;
  std::vector<MatC> basis;
  switch (g.family) {
    case Family::A: basis = su_basis(r + 1); break;
    case Family::B: basis = so_basis(2 * r + 1); break;
    case Family::C: basis = sp_basis(r); break;
    case Family::D: basis = so_basis(2 * r); break;
    case Family::G2: basis = g2_basis(); break;
    default: break;
  }
  const int dim = static_cast<int>(basis.size());
  F.dim = dim;
  const int N = static_cast<int>(basis[0].rows());

  Eigen::MatrixXd V(2 * N * N, dim);
  for (int i = 0; i < dim; ++i) V.col(i) = realify(basis[i]);
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(V);
  if (qr.rank() != dim) throw oracle_error(g.str() + ": basis is degenerate");
  double coord_res = 0;
  auto coords = [&](const MatC& m) {
    Eigen::VectorXd rv = realify(m);
    Eigen::VectorXd c = qr.solve(rv);
    coord_res = std::max(coord_res, (V * c - rv).norm());
    return c;
  };

  // raw ad, Killing, then an orthonormal basis for -B
  std::vector<Eigen::MatrixXd> raw(dim, Eigen::MatrixXd(dim, dim));
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) raw[i].col(j) = coords(basis[i] * basis[j] - basis[j] * basis[i]);
  if (coord_res > 1e-9) throw oracle_error(g.str() + ": not closed under the bracket");
  Eigen::MatrixXd B(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) B(i, j) = (raw[i] * raw[j]).trace();
  Eigen::LLT<Eigen::MatrixXd> llt(-B);
  if (llt.info() != Eigen::Success) throw oracle_error(g.str() + ": Killing form is not negative definite");
  // new basis f_k = sum_i T(i, k) e_i with T^t (-B) T = I
  Eigen::MatrixXd L = llt.matrixL();
  Eigen::MatrixXd T = L.transpose().triangularView<Eigen::Upper>().solve(Eigen::MatrixXd::Identity(dim, dim));
  Eigen::MatrixXd Tinv = L.transpose();
  F.ad.assign(dim, Eigen::MatrixXd::Zero(dim, dim));
  for (int k = 0; k < dim; ++k) {
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(dim, dim);
    for (int i = 0; i < dim; ++i) a += T(i, k) * raw[i];
    F.ad[k] = Tinv * a * T;
  }

  // torus element with eigenvalues i<a, v> on the root spaces
  auto v = generic_point(sys);
  MatC Tm = MatC::Zero(N, N);
  const cd I(0, 1);
  switch (g.family) {
    case Family::A:
      for (int i = 0; i <= r; ++i) Tm(i, i) = I * v[i];
      break;
    case Family::B:
    case Family::D:
      for (int i = 0; i < r; ++i) {
        Tm(2 * i, 2 * i + 1) = v[i];
        Tm(2 * i + 1, 2 * i) = -v[i];
      }
      break;
    case Family::C:
      for (int i = 0; i < r; ++i) {
        Tm(i, i) = I * v[i];
        Tm(r + i, r + i) = -I * v[i];
      }
      break;
    case Family::G2: {
      // weights of the 7-dim module are the short roots; rotate the planes
      // (2,3), (4,5), (6,7) by them with the signs that stay inside g2
      double h[3] = {v[1] - v[2], v[2] - v[0], v[0] - v[1]};
      bool found = false;
      for (int mask = 0; mask < 8 && !found; ++mask) {
        Eigen::MatrixXd A = Eigen::MatrixXd::Zero(7, 7);
        for (int k = 0; k < 3; ++k) {
          double s = (mask >> k) & 1 ? -1 : 1;
          A(1 + 2 * k, 2 + 2 * k) = s * h[k];
          A(2 + 2 * k, 1 + 2 * k) = -s * h[k];
        }
        if (derive_phi(A).norm() < 1e-12) {
          Tm = A.cast<cd>();
          found = true;
        }
      }
      if (!found) throw oracle_error("g2: no torus element among the sign patterns");
      break;
    }
    default: break;
  }
  coord_res = 0;
  Eigen::VectorXd t = Tinv * coords(Tm);
  if (coord_res > 1e-9) throw oracle_error(g.str() + ": torus element outside the algebra");
  Eigen::MatrixXd adT = F.ad_of(t);

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(-adT * adT);
  const Eigen::VectorXd& ev = es.eigenvalues();
  F.X = Eigen::MatrixXd::Zero(dim, sys.size());
  F.Y = Eigen::MatrixXd::Zero(dim, sys.size());
  std::vector<int> used(dim, 0);
  for (int a = 0; a < sys.size(); ++a) {
    if (!sys.positive(a)) continue;
    double val = 0;
    for (int i = 0; i < sys.ambient_dim(); ++i) val += to_double(sys.root(a)[i]) * v[i];
    std::vector<int> cols;
    for (int i = 0; i < dim; ++i)
      if (std::fabs(ev[i] - val * val) < 1e-7) cols.push_back(i);
    if (cols.size() != 2)
      throw oracle_error(g.str() + ": root space of " + to_string(sys.root(a)) + " has dimension " +
                         std::to_string(cols.size()));
    for (int c : cols) used[c] = 1;
    Eigen::VectorXd x = es.eigenvectors().col(cols[0]);
    Eigen::VectorXd y = adT * x / val;
    F.X.col(a) = x;
    F.Y.col(a) = y;
    F.X.col(sys.neg(a)) = x;
    F.Y.col(sys.neg(a)) = -y;
  }
  std::vector<int> torus;
  for (int i = 0; i < dim; ++i)
    if (!used[i]) torus.push_back(i);
  if (static_cast<int>(torus.size()) != r) throw oracle_error(g.str() + ": torus has the wrong dimension");
  F.H.resize(dim, r);
  for (int i = 0; i < r; ++i) F.H.col(i) = es.eigenvectors().col(torus[i]);

  // checks on the structure constants of the (H, X, Y) basis
  Eigen::MatrixXd P(dim, dim);
  int c = 0;
  for (int i = 0; i < r; ++i) P.col(c++) = F.H.col(i);
  for (int a = 0; a < sys.size(); ++a)
    if (sys.positive(a)) {
      P.col(c++) = F.X.col(a);
      P.col(c++) = F.Y.col(a);
    }
  std::vector<Eigen::MatrixXd> adP(dim);
  for (int i = 0; i < dim; ++i) adP[i] = F.ad_of(P.col(i));
  F.killing.resize(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) F.killing(i, j) = (adP[i] * adP[j]).trace();
  F.killing_residual = (F.killing + Eigen::MatrixXd::Identity(dim, dim)).cwiseAbs().maxCoeff();
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) {
      Eigen::VectorXd ij = adP[i] * P.col(j);
      F.antisymmetry_residual = std::max(F.antisymmetry_residual, (ij + adP[j] * P.col(i)).cwiseAbs().maxCoeff());
      // ad is a homomorphism: ad[x, y] = [ad x, ad y]
      Eigen::MatrixXd lhs = F.ad_of(ij), rhs = adP[i] * adP[j] - adP[j] * adP[i];
      F.jacobi_residual = std::max(F.jacobi_residual, (lhs - rhs).cwiseAbs().maxCoeff());
    }
  if (F.jacobi_residual > 1e-9 || F.antisymmetry_residual > 1e-9 || F.killing_residual > 1e-9)
    throw oracle_error(g.str() + ": construction residual too large");
  return F;
}

// |N_{a,b}|^2 against q(1-p)/2 |a|^2 over every pair with a+b a root
struct StructureConstantCheck {
  int pairs = 0;
  double max_error = 0;
};

inline StructureConstantCheck check_structure_constants(const CompactForm& F) {
  using cd = std::complex<double>;
  const RootSystem& sys = *F.sys;
  const cd I(0, 1);
  const double s2 = std::sqrt(2.0);
  auto E = [&](int a) -> Eigen::VectorXcd {
    Eigen::VectorXcd x = F.X.col(a).cast<cd>(), y = F.Y.col(a).cast<cd>();
    return (x - I * y) / s2;
  };
  StructureConstantCheck out;
  for (int a = 0; a < sys.size(); ++a) {
    Eigen::MatrixXcd adE = (F.ad_of(F.X.col(a)).cast<cd>() - I * F.ad_of(F.Y.col(a)).cast<cd>()) / s2;
    for (int b = 0; b < sys.size(); ++b) {
      int sum = sys.sum(a, b);
      if (sum == RootSystem::npos) continue;
      cd n = (adE * E(b)).dot(E(sys.neg(sum)).conjugate());
      auto [p, q] = sys.root_string(b, a);
      double expect = q * (1.0 - p) / 2.0 * to_double(sys.length2(a));
      out.max_error = std::max(out.max_error, std::fabs(std::norm(n) - expect));
      ++out.pairs;
    }
  }
  return out;
}

// C_S = -sum over S+ of (ad^2 X_a + ad^2 Y_a), plus the torus when asked
inline Eigen::MatrixXd casimir_matrix(const CompactForm& F, const std::vector<int>& S, bool with_torus = false) {
  Eigen::MatrixXd C = Eigen::MatrixXd::Zero(F.dim, F.dim);
  for (int a : S) {
    if (!F.sys->positive(a)) continue;
    Eigen::MatrixXd x = F.ad_of(F.X.col(a)), y = F.ad_of(F.Y.col(a));
    C -= x * x + y * y;
  }
  if (with_torus)
    for (int i = 0; i < F.H.cols(); ++i) {
      Eigen::MatrixXd h = F.ad_of(F.H.col(i));
      C -= h * h;
    }
  return C;
}

// Casimir of the subalgebra spanned by the torus and S, from an arbitrary
// orthonormal basis of that span
inline Eigen::MatrixXd subalgebra_casimir(const CompactForm& F, const std::vector<int>& S) {
  std::vector<Eigen::VectorXd> span;
  for (int i = 0; i < F.H.cols(); ++i) span.push_back(F.H.col(i));
  for (int a : S)
    if (F.sys->positive(a)) {
      span.push_back(F.X.col(a));
      span.push_back(F.Y.col(a));
    }
  Eigen::MatrixXd M(F.dim, span.size());
  for (size_t i = 0; i < span.size(); ++i) M.col(i) = span[i];
  // rotate by a fixed orthogonal matrix so the root basis is not reused
  Eigen::MatrixXd R = Eigen::MatrixXd::Zero(span.size(), span.size());
  for (size_t i = 0; i < span.size(); ++i)
    for (size_t j = 0; j < span.size(); ++j) R(i, j) = std::sin(1.0 + 0.7 * i + 1.3 * j * j);
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(R);
  Eigen::MatrixXd Q = qr.householderQ();
  Eigen::MatrixXd U = M * Q;
  Eigen::MatrixXd C = Eigen::MatrixXd::Zero(F.dim, F.dim);
  for (int i = 0; i < U.cols(); ++i) {
    Eigen::MatrixXd u = F.ad_of(U.col(i));
    C -= u * u;
  }
  return C;
}

struct NumericCasimirResult {
  Eigen::MatrixXd op;
  std::vector<double> clusters;                 // distinct eigenvalues on the target
  std::vector<std::pair<int, double>> per_root;  // positive target root, value on its plane
  double leakage = 0, plane_spread = 0;
  double cluster_tolerance = 1e-6;
};

inline NumericCasimirResult restrict_to_target(const CompactForm& F, Eigen::MatrixXd C, const RootSubset& target) {
  NumericCasimirResult out;
  out.op = std::move(C);
  std::vector<int> pos;
  for (int a : target.members)
    if (F.sys->positive(a)) pos.push_back(a);
  if (pos.empty()) throw invalid_input("numeric_casimir_check: empty target");
  Eigen::MatrixXd Vt(F.dim, 2 * pos.size());
  for (size_t i = 0; i < pos.size(); ++i) {
    Vt.col(2 * i) = F.X.col(pos[i]);
    Vt.col(2 * i + 1) = F.Y.col(pos[i]);
  }
  Eigen::MatrixXd CV = out.op * Vt;
  Eigen::MatrixXd Pin = Vt * Vt.transpose();
  out.leakage = (CV - Pin * CV).norm();
  if (out.leakage > 1e-9) throw oracle_error("target is not invariant, leakage " + std::to_string(out.leakage));
  Eigen::MatrixXd Cr = Vt.transpose() * CV;
  for (size_t i = 0; i < pos.size(); ++i) {
    Eigen::Matrix2d blk = Cr.block(2 * i, 2 * i, 2, 2);
    double m = blk.trace() / 2;
    out.plane_spread = std::max(out.plane_spread, (blk - m * Eigen::Matrix2d::Identity()).cwiseAbs().maxCoeff());
    out.per_root.push_back({pos[i], m});
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es((Cr + Cr.transpose()) / 2);
  for (int i = 0; i < es.eigenvalues().size(); ++i) {
    double x = es.eigenvalues()[i];
    if (out.clusters.empty() || x - out.clusters.back() > out.cluster_tolerance) out.clusters.push_back(x);
  }
  return out;
}

inline NumericCasimirResult numeric_casimir_check(const CompactForm& F, const RootSubset& subset,
                                                  const RootSubset& target) {
  return restrict_to_target(F, casimir_matrix(F, subset.members), target);
}

// largest |numeric - symbolic| of C_subset over the target roots
inline double compare_with_symbolic(const CompactForm& F, const RootSubset& subset, const NumericCasimirResult& r) {
  double err = r.plane_spread;
  for (auto [phi, val] : r.per_root) err = std::max(err, std::fabs(val - to_double(casimir_on_root(*F.sys, subset, phi))));
  return err;
}

inline double trace_identity_error(const CompactForm& F, const RootSubset& subset) {
  return std::fabs(casimir_matrix(F, subset.members).trace() - subset.size());
}

// ---------------------------------------------------------------------------
// per-instance audit

struct OracleAudit {
  std::string id;
  double casimir_error = 0;   // C_{p_a} on n against the root-string formula
  double gamma_error = 0;     // C_k on p_a against gamma_a
  double c_l_error = 0;       // C_l on p_a
  double c_kn_error = 0;      // C_k on n
  double additivity = 0;      // |C_l + C_p - C_k|
  double trace_error = 0;
  std::vector<std::vector<double>> b_clusters;  // per a, eigenvalue clusters of C_{p_a} on n
  bool ok(double tol = 1e-9) const {
    return casimir_error < tol && gamma_error < tol && c_l_error < tol && c_kn_error < tol && additivity < tol &&
           trace_error < 1e-6;
  }
};

inline OracleAudit audit_instance(const CompactForm& F, const TripleInstance& t) {
  if (!(F.g == t.family())) throw invalid_input("audit_instance: form does not match " + t.id());
  auto dec = decompose_isotropy(t);
  auto rep = eigenvalues(*F.sys, dec);
  OracleAudit out;
  out.id = t.id();
  Eigen::MatrixXd Ck = subalgebra_casimir(F, dec.Rk.members);
  Eigen::MatrixXd Cl = subalgebra_casimir(F, dec.Rl.members);
  std::vector<int> all_p;
  for (const auto& P : dec.Rp) all_p.insert(all_p.end(), P.members.begin(), P.members.end());
  out.additivity = (Cl + casimir_matrix(F, all_p) - Ck).cwiseAbs().maxCoeff();
  auto rk = restrict_to_target(F, Ck, dec.Rn);
  const RootSystem& sys = *F.sys;
  for (auto [phi, v] : rk.per_root)
    out.c_kn_error = std::max(
        out.c_kn_error, std::fabs(v - to_double(sys.length2(phi) + casimir_full(sys, dec.Rk.members, phi))));
  for (size_t a = 0; a < dec.Rp.size(); ++a) {
    auto rb = numeric_casimir_check(F, dec.Rp[a], dec.Rn);
    out.casimir_error = std::max(out.casimir_error, compare_with_symbolic(F, dec.Rp[a], rb));
    out.b_clusters.push_back(rb.clusters);
    out.trace_error = std::max(out.trace_error, trace_identity_error(F, dec.Rp[a]));
    auto rg = restrict_to_target(F, Ck, dec.Rp[a]);
    for (auto [phi, v] : rg.per_root) {
      (void)phi;
      out.gamma_error = std::max(out.gamma_error, std::fabs(v - to_double(rep.p[a].gamma)));
    }
    auto rl = restrict_to_target(F, Cl, dec.Rp[a]);
    for (auto [phi, v] : rl.per_root)
      out.c_l_error = std::max(
          out.c_l_error, std::fabs(v - to_double(sys.length2(phi) + casimir_full(sys, dec.Rl.members, phi))));
  }
  return out;
}

}  // namespace bisym
