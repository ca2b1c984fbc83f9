#pragma once

#include <iosfwd>

#include <Eigen/Dense>

#include "arbor/treefn.hpp"

namespace arbor {

/// (nabla f)(u) = f(u) - sum over children v of u of f(v).
///
/// Exact under zero extension: children of depth-D vertices carry f = 0.
TreeFunction apply_nabla(const TreeFunction& f);

/// (Delta f)(u) = sum of f over the sector of u. One reverse level sweep.
TreeFunction apply_delta(const TreeFunction& f);

/// T_phi f = Delta(phi * nabla f).
TreeFunction apply_toeplitz(const TreeFunction& phi, const TreeFunction& f);

/// T_phi f = f phi_- + Delta(f phi'). Independent of apply_toeplitz; the two
/// agree on every finitely supported input.
TreeFunction apply_toeplitz_alt(const TreeFunction& phi, const TreeFunction& f);

/// T_phi e_w in closed form: phi(w) at w, phi'(w) at every strict ancestor.
TreeFunction toeplitz_column(const TreeFunction& phi, VertexId w);

/// Conjugate transpose of the truncated matrix applied to y:
/// conj(phi(w)) y(w) + conj(phi'(w)) * sum of y over strict ancestors of w.
TreeFunction apply_toeplitz_adjoint(const TreeFunction& phi, const TreeFunction& y);

/// Dense matrix of T_phi on a truncation, M(u, w) = (T_phi e_w)(u).
///
/// Upper triangular in breadth-first id order: M(u, w) != 0 only when u == w
/// or u is a strict ancestor of w.
struct OperatorMatrix {
    TreeFunction symbol;
    Eigen::MatrixXcd entries;

    const TruncatedTree& tree() const noexcept { return symbol.tree(); }
    std::size_t size() const noexcept { return static_cast<std::size_t>(entries.rows()); }
};

/// Assembles the columns concurrently. Output does not depend on the thread
/// count.
OperatorMatrix materialize(const TreeFunction& phi);

/// Coordinate format: "%%MatrixMarket matrix coordinate complex general",
/// then "N N nnz", then one "row col re im" line per nonzero (1-based).
void write_matrix_market(std::ostream& out, const OperatorMatrix& m);

/// N rows of 2N columns: re(0),im(0),re(1),im(1),...
void write_dense_csv(std::ostream& out, const OperatorMatrix& m);

/// Serial implementations of the same kernels. Tests and benchmarks compare
/// the parallel versions against these.
namespace reference {

TreeFunction apply_nabla(const TreeFunction& f);
TreeFunction apply_delta(const TreeFunction& f);
TreeFunction shift_to_parent(const TreeFunction& f);
TreeFunction derivative(const TreeFunction& f);
TreeFunction apply_toeplitz(const TreeFunction& phi, const TreeFunction& f);
/// Column w is apply_toeplitz(phi, e_w); O(N^2).
OperatorMatrix materialize(const TreeFunction& phi);

}  // namespace reference

}  // namespace arbor
