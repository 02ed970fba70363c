#include "hlie/cochain.hpp"

#include "hlie/errors.hpp"
#include "hlie/linalg.hpp"

#include <string>

namespace hlie {

Cochain::Cochain(int arity, int source_dim, Matrix coeffs)
    : arity_(arity), source_dim_(source_dim), coeffs_(std::move(coeffs)) {
    if (arity < 0 || source_dim < 0) throw UsageError("Cochain: negative arity or dimension");
    if (coeffs_.cols() != binomial(source_dim, arity))
        throw UsageError("Cochain: expected " + std::to_string(binomial(source_dim, arity)) +
                         " coefficient columns, got " + std::to_string(coeffs_.cols()));
}

Cochain Cochain::zero(int arity, int source_dim, Index target_dim) {
    return Cochain(arity, source_dim, Matrix::Zero(target_dim, binomial(source_dim, arity)));
}

Cochain Cochain::from_flat(int arity, int source_dim, Index target_dim, const Vector& flat) {
    const Index cols = binomial(source_dim, arity);
    if (flat.size() != target_dim * cols) throw UsageError("Cochain::from_flat: length mismatch");
    return Cochain(arity, source_dim, flat.reshaped(target_dim, cols));
}

Cochain Cochain::constant(int source_dim, const Vector& value) {
    return Cochain(0, source_dim, Matrix(value));
}

Vector Cochain::on_basis(std::span<const int> indices) const {
    if (static_cast<int>(indices.size()) != arity_) throw UsageError("Cochain::on_basis: wrong number of indices");
    const SortedTuple s = sort_tuple(indices);
    if (s.repeated) return Vector::Zero(target_dim());
    Vector v = coeffs_.col(combination_rank(s.sorted, source_dim_));
    if (s.sign < 0) v = -v;
    return v;
}

Vector Cochain::flatten() const { return coeffs_.reshaped(); }

void Cochain::require_same_shape(const Cochain& other) const {
    if (arity_ != other.arity_ || source_dim_ != other.source_dim_ || target_dim() != other.target_dim())
        throw UsageError("Cochain: operands have different shapes");
}

Cochain& Cochain::operator+=(const Cochain& other) {
    require_same_shape(other);
    coeffs_ += other.coeffs_;
    return *this;
}

Cochain& Cochain::operator-=(const Cochain& other) {
    require_same_shape(other);
    coeffs_ -= other.coeffs_;
    return *this;
}

Cochain& Cochain::operator*=(const Rational& s) {
    coeffs_ *= s;
    return *this;
}

bool operator==(const Cochain& a, const Cochain& b) {
    return a.arity_ == b.arity_ && a.source_dim_ == b.source_dim_ && a.target_dim() == b.target_dim() &&
           a.coeffs_ == b.coeffs_;
}

Rational determinant(const Matrix& m) {
    if (m.rows() != m.cols()) throw UsageError("determinant: matrix is not square");
    Matrix a = m;
    Rational det = 1;
    const Index n = a.rows();
    for (Index col = 0; col < n; ++col) {
        Index pivot = col;
        while (pivot < n && a(pivot, col) == 0) ++pivot;
        if (pivot == n) return 0;
        if (pivot != col) {
            a.row(pivot).swap(a.row(col));
            det = -det;
        }
        det *= a(col, col);
        for (Index i = col + 1; i < n; ++i) {
            if (a(i, col) == 0) continue;
            const Rational factor = a(i, col) / a(col, col);
            for (Index j = col; j < n; ++j) a(i, j) -= factor * a(col, j);
        }
    }
    return det;
}

namespace {

Rational minor_of(const Matrix& m, std::span<const int> rows, std::span<const int> cols) {
    const auto k = static_cast<Index>(rows.size());
    if (k == 0) return 1;
    if (k == 1) return m(rows[0], cols[0]);
    if (k == 2) return m(rows[0], cols[0]) * m(rows[1], cols[1]) - m(rows[0], cols[1]) * m(rows[1], cols[0]);
    Matrix sub(k, k);
    for (Index i = 0; i < k; ++i)
        for (Index j = 0; j < k; ++j) sub(i, j) = m(rows[static_cast<std::size_t>(i)], cols[static_cast<std::size_t>(j)]);
    return determinant(sub);
}

} // namespace

Vector evaluate(const Cochain& f, std::span<const Vector> args) {
    if (static_cast<int>(args.size()) != f.arity())
        throw UsageError("evaluate: expected " + std::to_string(f.arity()) + " arguments, got " +
                         std::to_string(args.size()));
    const int d = f.source_dim();
    Matrix x(d, static_cast<Index>(args.size()));
    for (std::size_t k = 0; k < args.size(); ++k) {
        if (args[k].size() != d) throw UsageError("evaluate: argument length does not match source dimension");
        x.col(static_cast<Index>(k)) = args[k];
    }
    IndexTuple all_cols(args.size());
    for (std::size_t k = 0; k < args.size(); ++k) all_cols[k] = static_cast<int>(k);

    Vector out = Vector::Zero(f.target_dim());
    const auto combos = combinations(d, f.arity());
    for (std::size_t c = 0; c < combos.size(); ++c) {
        const Rational coefficient = minor_of(x, combos[c], all_cols);
        if (coefficient != 0) out += coefficient * f.coeffs().col(static_cast<Index>(c));
    }
    return out;
}

Matrix exterior_power_matrix(const Matrix& alpha, int n) {
    if (alpha.rows() != alpha.cols()) throw UsageError("exterior_power_matrix: matrix is not square");
    const int d = static_cast<int>(alpha.rows());
    if (n < 0 || n > d)
        throw UsageError("exterior_power_matrix: degree " + std::to_string(n) + " outside [0, " + std::to_string(d) +
                         "]");
    const auto combos = combinations(d, n);
    const auto size = static_cast<Index>(combos.size());
    Matrix out(size, size);
    for (Index i = 0; i < size; ++i)
        for (Index j = 0; j < size; ++j)
            out(i, j) = minor_of(alpha, combos[static_cast<std::size_t>(i)], combos[static_cast<std::size_t>(j)]);
    return out;
}

bool is_equivariant(const Cochain& f, const Matrix& alpha, const Matrix& beta) {
    if (alpha.rows() != f.source_dim() || beta.rows() != f.target_dim())
        throw UsageError("is_equivariant: twist dimensions do not match the cochain");
    if (f.coeffs().cols() == 0) return true;
    return beta * f.coeffs() == f.coeffs() * exterior_power_matrix(alpha, f.arity());
}

std::vector<Cochain> hom_cochain_basis(const Matrix& alpha, const Matrix& beta, int n) {
    if (alpha.rows() != alpha.cols() || beta.rows() != beta.cols())
        throw UsageError("hom_cochain_basis: twists must be square");
    if (n < 0) throw UsageError("hom_cochain_basis: negative arity");
    const int d = static_cast<int>(alpha.rows());
    const Index t = beta.rows();
    const Index c = binomial(d, n);
    if (c == 0) return {};
    const Matrix wedge = exterior_power_matrix(alpha, n);

    // Unknown M is t x c, flattened column-major: M(r, J) sits at J * t + r.
    // Row (r, J) of the system is (beta M - M wedge)(r, J) = 0.
    Matrix system = Matrix::Zero(t * c, t * c);
    for (Index col = 0; col < c; ++col) {
        for (Index r = 0; r < t; ++r) {
            const Index row = col * t + r;
            for (Index s = 0; s < t; ++s) system(row, col * t + s) += beta(r, s);
            for (Index i = 0; i < c; ++i) system(row, i * t + r) -= wedge(i, col);
        }
    }
    std::vector<Cochain> basis;
    for (const Vector& v : kernel_basis(system)) basis.push_back(Cochain::from_flat(n, d, t, v));
    return basis;
}

namespace {

void require_endomorphism(const Cochain& f, const Matrix& alpha, const char* where) {
    if (f.arity() < 1) throw UsageError(std::string(where) + ": 0-cochains carry no bracket degree");
    if (f.target_dim() != f.source_dim())
        throw UsageError(std::string(where) + ": cochain is not endomorphism-valued");
    if (alpha.rows() != f.source_dim() || alpha.cols() != f.source_dim())
        throw UsageError(std::string(where) + ": twist does not match the cochain dimension");
}

} // namespace

Cochain nr_diamond(const Cochain& p, const Cochain& q, const Matrix& alpha) {
    require_endomorphism(p, alpha, "nr_diamond");
    require_endomorphism(q, alpha, "nr_diamond");
    if (p.source_dim() != q.source_dim()) throw UsageError("nr_diamond: cochains live on different spaces");
    const int d = p.source_dim();
    const int m = p.arity() - 1;
    const int n = q.arity() - 1;
    const int arity = m + n + 1;
    Cochain out = Cochain::zero(arity, d, d);
    if (binomial(d, arity) == 0) return out;

    const Matrix twist = matrix_power(alpha, n);
    const auto moves = shuffles(n + 1, m);
    const auto combos = combinations(d, arity);
    Matrix coeffs = Matrix::Zero(d, static_cast<Index>(combos.size()));
    std::vector<Vector> args(static_cast<std::size_t>(m + 1));
    IndexTuple inner(static_cast<std::size_t>(n + 1));
    for (std::size_t c = 0; c < combos.size(); ++c) {
        const IndexTuple& tuple = combos[c];
        Vector sum = Vector::Zero(d);
        for (const Shuffle& s : moves) {
            for (int k = 0; k <= n; ++k) inner[static_cast<std::size_t>(k)] = tuple[static_cast<std::size_t>(s.perm[static_cast<std::size_t>(k)])];
            args[0] = q.on_basis(inner);
            if (is_zero(args[0])) continue;
            for (int k = 0; k < m; ++k)
                args[static_cast<std::size_t>(k + 1)] =
                    twist.col(tuple[static_cast<std::size_t>(s.perm[static_cast<std::size_t>(n + 1 + k)])]);
            const Vector value = evaluate(p, args);
            if (s.sign > 0)
                sum += value;
            else
                sum -= value;
        }
        coeffs.col(static_cast<Index>(c)) = sum;
    }
    return Cochain(arity, d, std::move(coeffs));
}

Cochain nr_bracket(const Cochain& p, const Cochain& q, const Matrix& alpha) {
    const int m = nr_degree(p);
    const int n = nr_degree(q);
    Cochain out = nr_diamond(p, q, alpha);
    const Cochain reverse = nr_diamond(q, p, alpha);
    if ((m * n) % 2 == 0)
        out -= reverse;
    else
        out += reverse;
    return out;
}

Cochain lift_to_product(const Cochain& f, int g_dim, Index v_dim) {
    if (f.source_dim() != g_dim || f.target_dim() != v_dim)
        throw UsageError("lift_to_product: cochain does not map Lambda^n g into V");
    const int total = g_dim + static_cast<int>(v_dim);
    const auto combos = combinations(total, f.arity());
    Matrix coeffs = Matrix::Zero(total, static_cast<Index>(combos.size()));
    for (std::size_t c = 0; c < combos.size(); ++c) {
        const IndexTuple& tuple = combos[c];
        if (!tuple.empty() && tuple.back() >= g_dim) continue;
        coeffs.block(g_dim, static_cast<Index>(c), v_dim, 1) = f.on_basis(tuple);
    }
    return Cochain(f.arity(), total, std::move(coeffs));
}

McResiduals is_mc_pair(const Cochain& mu1, const Cochain& mu2, const Matrix& alpha,
                       const std::optional<std::pair<Cochain, Cochain>>& base) {
    auto require = [&](const Cochain& f, const char* name) {
        if (f.arity() != 2) throw UsageError(std::string("is_mc_pair: ") + name + " is not a 2-cochain");
        if (!is_equivariant(f, alpha, alpha))
            throw PreconditionError(std::string("is_mc_pair: ") + name + " is not alpha-equivariant");
    };
    require(mu1, "mu1");
    require(mu2, "mu2");

    McResiduals r{nr_bracket(mu1, mu1, alpha), nr_bracket(mu2, mu2, alpha), nr_bracket(mu1, mu2, alpha)};
    if (!base) return r;

    const auto& [theta1, theta2] = *base;
    require(theta1, "theta1");
    require(theta2, "theta2");
    if (!is_mc_pair(theta1, theta2, alpha).is_mc())
        throw PreconditionError("is_mc_pair: base pair is not a Maurer-Cartan element");
    r.first += Rational(2) * nr_bracket(theta1, mu1, alpha);
    r.second += Rational(2) * nr_bracket(theta2, mu2, alpha);
    r.mixed += nr_bracket(theta1, mu2, alpha) + nr_bracket(theta2, mu1, alpha);
    return r;
}

} // namespace hlie
