#include "arbor/operators.hpp"

#include <ostream>
#include <stdexcept>

#include "arbor/format.hpp"

namespace arbor {

namespace {

constexpr std::size_t kMaxDenseSize = 16384;

}  // namespace

TreeFunction apply_nabla(const TreeFunction& f) {
    const TruncatedTree& t = f.tree();
    const auto& first = t.first_child_array();
    const auto& count = t.child_count_array();
    const auto in = f.values();
    std::vector<Complex> out(f.size());
    const auto n = static_cast<std::ptrdiff_t>(f.size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t u = 0; u < n; ++u) {
        Complex s = in[u];
        const VertexId c0 = first[u];
        for (VertexId c = c0; c < c0 + count[u]; ++c) s -= in[c];
        out[u] = s;
    }
    return TreeFunction(f.tree_ptr(), std::move(out));
}

TreeFunction apply_delta(const TreeFunction& f) {
    const TruncatedTree& t = f.tree();
    const auto& first = t.first_child_array();
    const auto& count = t.child_count_array();
    std::vector<Complex> out(f.values().begin(), f.values().end());
    // Deepest level is already final; fold each level into its parents.
    for (std::size_t d = t.depth_limit(); d-- > 0;) {
        const auto lo = static_cast<std::ptrdiff_t>(t.level_begin(d));
        const auto hi = static_cast<std::ptrdiff_t>(t.level_begin(d + 1));
#pragma omp parallel for schedule(static)
        for (std::ptrdiff_t u = lo; u < hi; ++u) {
            Complex s = out[u];
            const VertexId c0 = first[u];
            for (VertexId c = c0; c < c0 + count[u]; ++c) s += out[c];
            out[u] = s;
        }
    }
    return TreeFunction(f.tree_ptr(), std::move(out));
}

TreeFunction apply_toeplitz(const TreeFunction& phi, const TreeFunction& f) {
    require_same_tree(phi, f);
    return apply_delta(pointwise_product(phi, apply_nabla(f)));
}

TreeFunction apply_toeplitz_alt(const TreeFunction& phi, const TreeFunction& f) {
    require_same_tree(phi, f);
    TreeFunction out = pointwise_product(f, shift_to_parent(phi));
    out += apply_delta(pointwise_product(f, derivative(phi)));
    return out;
}

TreeFunction toeplitz_column(const TreeFunction& phi, VertexId w) {
    const TruncatedTree& t = phi.tree();
    if (w >= t.size()) throw std::out_of_range("column index out of range");
    TreeFunction col(phi.tree_ptr());
    col[w] = phi[w];
    if (w == 0) return col;
    const auto& parent = t.parent_array();
    const Complex slope = phi[w] - phi[parent[w]];
    for (VertexId u = w; u != 0;) {
        u = parent[u];
        col[u] = slope;
    }
    return col;
}

TreeFunction apply_toeplitz_adjoint(const TreeFunction& phi, const TreeFunction& y) {
    require_same_tree(phi, y);
    const TruncatedTree& t = phi.tree();
    const auto& parent = t.parent_array();
    // above[w] = sum of y over strict ancestors of w, one forward sweep.
    std::vector<Complex> above(t.size());
    for (std::size_t d = 1; d <= t.depth_limit(); ++d) {
        const auto lo = static_cast<std::ptrdiff_t>(t.level_begin(d));
        const auto hi = static_cast<std::ptrdiff_t>(t.level_begin(d + 1));
#pragma omp parallel for schedule(static)
        for (std::ptrdiff_t w = lo; w < hi; ++w) above[w] = above[parent[w]] + y[parent[w]];
    }
    std::vector<Complex> out(t.size());
    const auto n = static_cast<std::ptrdiff_t>(t.size());
    if (n > 0) out[0] = std::conj(phi[0]) * y[0];
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t w = 1; w < n; ++w) {
        out[w] = std::conj(phi[w]) * y[w] + std::conj(phi[w] - phi[parent[w]]) * above[w];
    }
    return TreeFunction(phi.tree_ptr(), std::move(out));
}

OperatorMatrix materialize(const TreeFunction& phi) {
    const TruncatedTree& t = phi.tree();
    const std::size_t n = t.size();
    if (n > kMaxDenseSize) {
        throw std::length_error("dense operator matrix limited to " +
                                std::to_string(kMaxDenseSize) + " vertices, got " +
                                std::to_string(n));
    }
    OperatorMatrix m{phi, Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(n),
                                                 static_cast<Eigen::Index>(n))};
    const auto& parent = t.parent_array();
    const auto nn = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(dynamic, 64)
    for (std::ptrdiff_t w = 0; w < nn; ++w) {
        m.entries(w, w) = phi[w];
        if (w == 0) continue;
        const Complex slope = phi[w] - phi[parent[w]];
        for (VertexId u = static_cast<VertexId>(w); u != 0;) {
            u = parent[u];
            m.entries(static_cast<Eigen::Index>(u), w) = slope;
        }
    }
    return m;
}

void write_matrix_market(std::ostream& out, const OperatorMatrix& m) {
    const auto n = m.entries.rows();
    std::size_t nnz = 0;
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) nnz += m.entries(i, j) != Complex{};
    }
    out << "%%MatrixMarket matrix coordinate complex general\n";
    out << n << ' ' << n << ' ' << nnz << '\n';
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) {
            const Complex z = m.entries(i, j);
            if (z == Complex{}) continue;
            out << (i + 1) << ' ' << (j + 1) << ' ' << format_double(z.real()) << ' '
                << format_double(z.imag()) << '\n';
        }
    }
}

void write_dense_csv(std::ostream& out, const OperatorMatrix& m) {
    const auto n = m.entries.rows();
    for (Eigen::Index j = 0; j < n; ++j) {
        out << (j ? "," : "") << "re_" << j << ",im_" << j;
    }
    out << '\n';
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) {
            const Complex z = m.entries(i, j);
            out << (j ? "," : "") << format_double(z.real()) << ',' << format_double(z.imag());
        }
        out << '\n';
    }
}

// ---------------------------------------------------------------------------

namespace reference {

TreeFunction apply_nabla(const TreeFunction& f) {
    const TruncatedTree& t = f.tree();
    TreeFunction out(f.tree_ptr());
    for (VertexId u = 0; u < t.size(); ++u) {
        Complex s = f[u];
        for (VertexId c : t.children(u)) s -= f[c];
        out[u] = s;
    }
    return out;
}

TreeFunction apply_delta(const TreeFunction& f) {
    const TruncatedTree& t = f.tree();
    TreeFunction out = f;
    for (VertexId u = t.size(); u-- > 1;) out[*t.parent(u)] += out[u];
    return out;
}

TreeFunction shift_to_parent(const TreeFunction& f) {
    const TruncatedTree& t = f.tree();
    TreeFunction out(f.tree_ptr());
    for (VertexId v = 1; v < t.size(); ++v) out[v] = f[*t.parent(v)];
    return out;
}

TreeFunction derivative(const TreeFunction& f) {
    return f - reference::shift_to_parent(f);
}

TreeFunction apply_toeplitz(const TreeFunction& phi, const TreeFunction& f) {
    require_same_tree(phi, f);
    return reference::apply_delta(pointwise_product(phi, reference::apply_nabla(f)));
}

OperatorMatrix materialize(const TreeFunction& phi) {
    const std::size_t n = phi.size();
    OperatorMatrix m{phi, Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(n),
                                                 static_cast<Eigen::Index>(n))};
    for (VertexId w = 0; w < n; ++w) {
        const TreeFunction col =
            reference::apply_toeplitz(phi, TreeFunction::indicator(phi.tree_ptr(), w));
        for (VertexId u = 0; u < n; ++u) m.entries(static_cast<Eigen::Index>(u), w) = col[u];
    }
    return m;
}

}  // namespace reference

}  // namespace arbor
