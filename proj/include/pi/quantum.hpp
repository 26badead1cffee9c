#pragma once

// Matrix semantics.  Classical terms become permutation matrices, H/S/T are
// the usual one-qubit gates on 1 + 1, and the arrow layers become isometries
// and channels.  A channel is kept as (input dim, prep dim E, unitary U on
// input + E, discard dim G): prepare by direct sum, evolve by U, trace out
// the G factor.

#include <Eigen/Dense>
#include <unsupported/Eigen/KroneckerProduct>

#include <cmath>
#include <complex>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "pi/arrows.hpp"
#include "pi/comb.hpp"
#include "pi/errors.hpp"
#include "pi/finite.hpp"
#include "pi/models.hpp"
#include "pi/typecheck.hpp"

namespace pi::quantum {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

/// Tolerance for structural checks (unitarity, trace preservation, positivity).
inline constexpr double structural_tol = 1e-9;
/// Tolerance for exact small-matrix identities.
inline constexpr double exact_tol = 1e-12;

inline double max_abs_diff(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw size_error("comparing matrices of different shapes");
  if (a.size() == 0) return 0.0;
  return (a - b).cwiseAbs().maxCoeff();
}

inline bool is_unitary(const Matrix& u, double tol = structural_tol) {
  if (u.rows() != u.cols()) return false;
  Matrix id = Matrix::Identity(u.rows(), u.cols());
  return max_abs_diff(u.adjoint() * u, id) <= tol && max_abs_diff(u * u.adjoint(), id) <= tol;
}

inline bool is_isometry(const Matrix& v, double tol = structural_tol) {
  return max_abs_diff(v.adjoint() * v, Matrix::Identity(v.cols(), v.cols())) <= tol;
}

/// Column k has its single 1 in row p[k].
inline Matrix permutation_matrix(const Permutation& p) {
  auto n = static_cast<Eigen::Index>(p.size());
  Matrix m = Matrix::Zero(n, n);
  for (Eigen::Index k = 0; k < n; ++k) m(static_cast<Eigen::Index>(p[k]), k) = 1.0;
  return m;
}

inline Matrix direct_sum(const Matrix& a, const Matrix& b) {
  Matrix m = Matrix::Zero(a.rows() + b.rows(), a.cols() + b.cols());
  m.topLeftCorner(a.rows(), a.cols()) = a;
  m.bottomRightCorner(b.rows(), b.cols()) = b;
  return m;
}

inline Matrix kron(const Matrix& a, const Matrix& b) { return Eigen::kroneckerProduct(a, b).eval(); }

inline Matrix gate(Prim p) {
  Matrix m(2, 2);
  switch (p) {
    case Prim::hadamard: {
      double r = 1.0 / std::sqrt(2.0);
      m << r, r, r, -r;
      return m;
    }
    case Prim::phase_s:
      m << 1.0, 0.0, 0.0, Complex(0.0, 1.0);
      return m;
    case Prim::phase_t:
      m << 1.0, 0.0, 0.0, std::polar(1.0, M_PI / 4);
      return m;
    default:
      throw eval_error("`" + std::string(name(p)) + "` is not a quantum gate");
  }
}

/// The unitary of a checked term.  Classical subterms go through the
/// permutation semantics, so the Π fragment maps exactly to 0/1 matrices.
inline Matrix denote_q(const Derivation& d) {
  if (is_classical(d.term)) return permutation_matrix(denote(d));
  switch (d.term.kind()) {
    case Comb::Kind::prim:
      return gate(d.term.primitive());
    case Comb::Kind::seq:
      return denote_q(d.premises[1]) * denote_q(d.premises[0]);
    case Comb::Kind::sum:
      return direct_sum(denote_q(d.premises[0]), denote_q(d.premises[1]));
    case Comb::Kind::prod:
      return kron(denote_q(d.premises[0]), denote_q(d.premises[1]));
    case Comb::Kind::inv:
      return denote_q(d.premises[0]).adjoint();
    case Comb::Kind::ascribe:
      return denote_q(d.premises[0]);
  }
  throw eval_error("malformed term");
}

inline Matrix denote_q(const Comb& c, const Type& dom, const Type& cod) { return denote_q(check(c, dom, cod)); }

/// A matrix V with V†V = I.
class Isometry {
 public:
  explicit Isometry(Matrix v, double tol = structural_tol) : v_(std::move(v)) {
    if (!is_isometry(v_, tol)) throw value_error("matrix is not an isometry");
  }

  const Matrix& matrix() const { return v_; }
  Eigen::Index dom_dim() const { return v_.cols(); }
  Eigen::Index cod_dim() const { return v_.rows(); }

 private:
  Matrix v_;
};

/// iso_lift(u) for u : b1 + b3 <-> b2: the first |b1| columns of its unitary.
inline Isometry iso_lift(const Comb& u, const Type& b1, const Type& b3, const Type& b2) {
  Matrix m = denote_q(u, Type::sum(b1, b3), b2);
  return Isometry(m.leftCols(static_cast<Eigen::Index>(size(b1))));
}

/// A density matrix: Hermitian, unit trace, positive semidefinite.
class DensityMatrix {
 public:
  explicit DensityMatrix(Matrix rho, double tol = structural_tol) : rho_(std::move(rho)) {
    if (rho_.rows() != rho_.cols()) throw value_error("density matrix must be square");
    if (max_abs_diff(rho_, rho_.adjoint()) > tol) throw value_error("density matrix is not Hermitian");
    if (std::abs(rho_.trace() - Complex(1.0)) > tol) throw value_error("density matrix does not have unit trace");
    if (rho_.rows() > 0) {
      Eigen::SelfAdjointEigenSolver<Matrix> es(rho_, Eigen::EigenvaluesOnly);
      if (es.eigenvalues().minCoeff() < -tol) throw value_error("density matrix has a negative eigenvalue");
    }
  }

  static DensityMatrix pure(const Vector& psi) {
    double n = psi.norm();
    if (std::abs(n - 1.0) > structural_tol) throw value_error("state vector is not normalised");
    return DensityMatrix(psi * psi.adjoint());
  }

  const Matrix& matrix() const { return rho_; }
  Eigen::Index dim() const { return rho_.rows(); }

  /// Born-rule probabilities ⟨k|ρ|k⟩.
  std::vector<double> probabilities() const {
    std::vector<double> p(static_cast<std::size_t>(dim()));
    for (Eigen::Index k = 0; k < dim(); ++k) p[static_cast<std::size_t>(k)] = rho_(k, k).real();
    return p;
  }

 private:
  Matrix rho_;
};

inline Vector basis(Eigen::Index n, Eigen::Index k) {
  Vector v = Vector::Zero(n);
  v(k) = 1.0;
  return v;
}

/// Tr_G over the right tensor factor of a (k·g) × (k·g) matrix.
inline Matrix partial_trace_right(const Matrix& m, Eigen::Index k, Eigen::Index g) {
  if (m.rows() != k * g || m.cols() != k * g) throw size_error("partial trace dimensions do not match");
  Matrix out = Matrix::Zero(k, k);
  for (Eigen::Index i = 0; i < k; ++i)
    for (Eigen::Index j = 0; j < k; ++j)
      for (Eigen::Index x = 0; x < g; ++x) out(i, j) += m(i * g + x, j * g + x);
  return out;
}

/// Unitary on N = V.rows() whose first V.cols() columns are V.
inline Matrix complete_unitary(const Matrix& v) {
  Eigen::Index n = v.rows();
  Eigen::Index d = v.cols();
  if (d == n) return v;
  Matrix q = v.householderQr().householderQ() * Matrix::Identity(n, n);
  Matrix u(n, n);
  u.leftCols(d) = v;
  u.rightCols(n - d) = q.rightCols(n - d);
  return u;
}

class Channel {
 public:
  /// Normal form: input dimension d, ancilla E, unitary U of size d + E, and
  /// discarded factor G dividing d + E.
  Channel(Eigen::Index dom_dim, Eigen::Index prep_dim, Matrix unitary, Eigen::Index discard_dim)
      : dom_(dom_dim), prep_(prep_dim), discard_(discard_dim), u_(std::move(unitary)) {
    Eigen::Index n = dom_ + prep_;
    if (u_.rows() != n || u_.cols() != n) throw size_error("unitary does not act on input + ancilla");
    if (discard_ <= 0 || n % discard_ != 0) throw size_error("discarded dimension does not divide the output");
    if (!is_unitary(u_)) throw value_error("channel dynamics are not unitary");
  }

  Eigen::Index dom_dim() const { return dom_; }
  Eigen::Index prep_dim() const { return prep_; }
  Eigen::Index discard_dim() const { return discard_; }
  Eigen::Index cod_dim() const { return (dom_ + prep_) / discard_; }
  const Matrix& unitary() const { return u_; }

  /// The Stinespring isometry: U after injecting into the first summand.
  Matrix isometry() const { return u_.leftCols(dom_); }

  /// K_g = (I ⊗ ⟨g|) V.
  std::vector<Matrix> kraus() const {
    Matrix v = isometry();
    Eigen::Index k = cod_dim();
    std::vector<Matrix> out;
    for (Eigen::Index g = 0; g < discard_; ++g) {
      Matrix kg(k, dom_);
      for (Eigen::Index i = 0; i < k; ++i) kg.row(i) = v.row(i * discard_ + g);
      out.push_back(std::move(kg));
    }
    return out;
  }

  Matrix apply(const Matrix& rho) const {
    if (rho.rows() != dom_ || rho.cols() != dom_) throw size_error("state has the wrong dimension for this channel");
    Matrix v = isometry();
    return partial_trace_right(v * rho * v.adjoint(), cod_dim(), discard_);
  }

  DensityMatrix apply(const DensityMatrix& rho) const { return DensityMatrix(apply(rho.matrix())); }

  /// Σ_g vec(K_g) vec(K_g)†, with vec stacking columns.
  Matrix choi() const {
    Eigen::Index k = cod_dim();
    Matrix j = Matrix::Zero(dom_ * k, dom_ * k);
    for (const auto& kg : kraus()) {
      Vector v = Eigen::Map<const Vector>(kg.data(), kg.size());
      j += v * v.adjoint();
    }
    return j;
  }

  bool is_trace_preserving(double tol = structural_tol) const {
    Matrix s = Matrix::Zero(dom_, dom_);
    for (const auto& kg : kraus()) s += kg.adjoint() * kg;
    return max_abs_diff(s, Matrix::Identity(dom_, dom_)) <= tol;
  }

  double choi_min_eigenvalue() const {
    Matrix j = choi();
    if (j.size() == 0) return 0.0;
    Eigen::SelfAdjointEigenSolver<Matrix> es(j, Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
  }

  bool is_completely_positive(double tol = structural_tol) const { return choi_min_eigenvalue() >= -tol; }

 private:
  Eigen::Index dom_;
  Eigen::Index prep_;
  Eigen::Index discard_;
  Matrix u_;
};

/// chan_lift(V) for V into cod ⊗ garbage: complete V to a unitary.
inline Channel chan_lift(const Isometry& v, Eigen::Index garbage_dim) {
  if (garbage_dim <= 0 || v.cod_dim() % garbage_dim != 0)
    throw size_error("isometry codomain is not a multiple of the discarded dimension");
  return Channel(v.dom_dim(), v.cod_dim() - v.dom_dim(), complete_unitary(v.matrix()), garbage_dim);
}

/// Λ2 ∘ Λ1.  The combined isometry is (V2 ⊗ I_G1) V1, discarding G2 ⊗ G1.
inline Channel compose(const Channel& second, const Channel& first) {
  if (first.cod_dim() != second.dom_dim()) throw size_error("composing channels with mismatched dimensions");
  Matrix v = kron(second.isometry(), Matrix::Identity(first.discard_dim(), first.discard_dim())) * first.isometry();
  return chan_lift(Isometry(v), second.discard_dim() * first.discard_dim());
}

inline bool same_channel(const Channel& a, const Channel& b, double tol = structural_tol) {
  if (a.dom_dim() != b.dom_dim() || a.cod_dim() != b.cod_dim()) return false;
  return max_abs_diff(a.choi(), b.choi()) <= tol;
}

/// The channel of a hiding term: its allocation body is the unitary, the
/// heap is prepared, the garbage is traced out.
inline Channel hide_channel(const HideTerm& t) {
  const AllocTerm& a = t.body();
  Matrix u = denote_q(a.body(), Type::sum(a.dom(), a.hidden()), a.cod());
  return Channel(static_cast<Eigen::Index>(size(a.dom())), static_cast<Eigen::Index>(size(a.hidden())), std::move(u),
                 static_cast<Eigen::Index>(size(t.garbage())));
}

/// Computational-basis measurement, built as clone >>> fst.
inline Channel measure_channel(const Type& b) { return hide_channel(pi::measure(b)); }

/// One stage of a prepare / evolve / discard pipeline.
struct Stage {
  enum class Kind { unitary, prepare, discard };
  Kind kind;
  Matrix u;                // unitary stages
  Eigen::Index extra = 0;  // ancilla dimension (prepare) or traced factor (discard)

  static Stage evolve(Matrix m) { return {Kind::unitary, std::move(m), 0}; }
  static Stage prepare(Eigen::Index e) { return {Kind::prepare, Matrix(), e}; }
  static Stage discard(Eigen::Index g) { return {Kind::discard, Matrix(), g}; }
};

/// Channel of a single stage acting on dimension d.
inline Channel stage_channel(const Stage& s, Eigen::Index d) {
  switch (s.kind) {
    case Stage::Kind::unitary:
      if (s.u.rows() != d) throw size_error("unitary stage has the wrong dimension");
      return Channel(d, 0, s.u, 1);
    case Stage::Kind::prepare: {
      // ρ ↦ ρ ⊕ 0 on d + E.
      Matrix v = Matrix::Zero(d + s.extra, d);
      v.topRows(d) = Matrix::Identity(d, d);
      return chan_lift(Isometry(v), 1);
    }
    case Stage::Kind::discard:
      // d = k·G; trace out G.
      if (s.extra <= 0 || d % s.extra != 0) throw size_error("discarded factor does not divide the dimension");
      return Channel(d, 0, Matrix::Identity(d, d), s.extra);
  }
  throw size_error("malformed stage");
}

/// Folds a pipeline into a single normal form (E, U, G).
inline Channel stinespring_normalize(const std::vector<Stage>& pipeline, Eigen::Index dom_dim) {
  Channel acc(dom_dim, 0, Matrix::Identity(dom_dim, dom_dim), 1);
  for (const auto& s : pipeline) acc = compose(stage_channel(s, acc.cod_dim()), acc);
  return acc;
}

/// Applies the pipeline stage by stage, without folding.
inline Matrix run_pipeline(const std::vector<Stage>& pipeline, Matrix rho) {
  for (const auto& s : pipeline) rho = stage_channel(s, rho.rows()).apply(rho);
  return rho;
}

}  // namespace pi::quantum
