#include "hlie/cohomology.hpp"

#include "hlie/linalg.hpp"

#include <functional>
#include <string>

namespace hlie {

namespace {

void require_valid(const ValidationReport& report, const char* where) {
    if (!report.passed()) throw InvalidStructureError(std::string(where) + ": structure fails verification", report);
}

void require_shape(const Cochain& f, int source_dim, Index target_dim, const char* where) {
    if (f.source_dim() != source_dim || f.target_dim() != target_dim)
        throw UsageError(std::string(where) + ": cochain has the wrong source or target dimension");
}

void require_layout(const CompatibleCochain& f, const char* where) {
    const std::size_t expected = f.degree == 0 ? 1 : static_cast<std::size_t>(f.degree);
    if (f.degree < 0 || f.components.size() != expected)
        throw UsageError(std::string(where) + ": a degree-" + std::to_string(f.degree) + " compatible cochain needs " +
                         std::to_string(expected) + " component(s)");
    for (const Cochain& c : f.components)
        if (c.arity() != f.degree) throw UsageError(std::string(where) + ": component arity differs from the degree");
}

// Kernel of beta - id stacked with the action differences: the vectors v that are
// beta-fixed and act identically under every table.
std::vector<Vector> zero_space(const Representation& v) {
    const Index t = v.vdim();
    const int d = v.base_dim();
    const int extra = v.action_count() - 1;
    Matrix system(t + extra * d * t, t);
    system.topRows(t) = v.beta() - Matrix::Identity(t, t);
    Index row = t;
    for (int b = 1; b < v.action_count(); ++b)
        for (int i = 0; i < d; ++i, row += t)
            system.middleRows(row, t) = v.actions()[static_cast<std::size_t>(b)][static_cast<std::size_t>(i)] -
                                        v.actions()[0][static_cast<std::size_t>(i)];
    return kernel_basis(system);
}

} // namespace

CeDifferential::CeDifferential(HomLieAlgebra l, Representation v, bool validate)
    : algebra_(std::move(l)), rep_(std::move(v)) {
    if (rep_.base_dim() != algebra_.dim()) throw UsageError("CeDifferential: representation base dimension mismatch");
    if (validate) {
        ValidationReport report = verify_structure(algebra_);
        report.append(verify_structure(algebra_, rep_), "representation.");
        require_valid(report, "CeDifferential");
    }
}

Cochain CeDifferential::apply_unchecked(const Cochain& f) const {
    const int d = algebra_.dim();
    require_shape(f, d, rep_.vdim(), "CeDifferential");
    const int n = f.arity();
    const auto combos = combinations(d, n + 1);
    Matrix out = Matrix::Zero(rep_.vdim(), static_cast<Index>(combos.size()));
    if (combos.empty()) return Cochain(n + 1, d, std::move(out));

    if (n == 0) {
        for (int i = 0; i < d; ++i) out.col(i) = rep_.actions()[0][static_cast<std::size_t>(i)] * f.coeffs().col(0);
        return Cochain(1, d, std::move(out));
    }

    const Matrix twist_action = matrix_power(algebra_.alpha(), n - 1);
    const Matrix& alpha = algebra_.alpha();
    IndexTuple rest(static_cast<std::size_t>(n));
    std::vector<Vector> args(static_cast<std::size_t>(n));
    for (std::size_t c = 0; c < combos.size(); ++c) {
        const IndexTuple& x = combos[c];
        Vector sum = Vector::Zero(rep_.vdim());
        for (int i = 0; i <= n; ++i) {
            for (int k = 0, r = 0; k <= n; ++k)
                if (k != i) rest[static_cast<std::size_t>(r++)] = x[static_cast<std::size_t>(k)];
            const Vector value = f.on_basis(rest);
            if (is_zero(value)) continue;
            const Vector term = rep_.action_matrix(0, twist_action.col(x[static_cast<std::size_t>(i)])) * value;
            if (i % 2 == 0)
                sum += term;
            else
                sum -= term;
        }
        for (int i = 0; i <= n; ++i)
            for (int j = i + 1; j <= n; ++j) {
                args[0] = algebra_.on_basis(x[static_cast<std::size_t>(i)], x[static_cast<std::size_t>(j)]);
                if (is_zero(args[0])) continue;
                for (int k = 0, r = 1; k <= n; ++k)
                    if (k != i && k != j) args[static_cast<std::size_t>(r++)] = alpha.col(x[static_cast<std::size_t>(k)]);
                const Vector term = evaluate(f, args);
                if ((i + j) % 2 == 0)
                    sum += term;
                else
                    sum -= term;
            }
        out.col(static_cast<Index>(c)) = sum;
    }
    return Cochain(n + 1, d, std::move(out));
}

Cochain CeDifferential::apply(const Cochain& f) const {
    require_shape(f, algebra_.dim(), rep_.vdim(), "CeDifferential");
    if (!is_equivariant(f, algebra_.alpha(), rep_.beta()))
        throw PreconditionError("CeDifferential: cochain is not equivariant");
    return apply_unchecked(f);
}

Cochain ce_coboundary(const HomLieAlgebra& l, const Representation& v, const Cochain& f) {
    return CeDifferential(l, v).apply(f);
}

CompatibleCochain CompatibleCochain::zero(int degree, int source_dim, Index target_dim) {
    if (degree < 0) throw UsageError("CompatibleCochain: negative degree");
    CompatibleCochain out{degree, {}};
    const int count = degree == 0 ? 1 : degree;
    for (int k = 0; k < count; ++k) out.components.push_back(Cochain::zero(degree, source_dim, target_dim));
    return out;
}

Vector CompatibleCochain::flatten() const {
    Index size = 0;
    for (const Cochain& c : components) size += c.flat_size();
    Vector out(size);
    Index at = 0;
    for (const Cochain& c : components) {
        out.segment(at, c.flat_size()) = c.flatten();
        at += c.flat_size();
    }
    return out;
}

CompatibleCochain CompatibleCochain::from_flat(int degree, int source_dim, Index target_dim, const Vector& flat) {
    CompatibleCochain out = zero(degree, source_dim, target_dim);
    const Index block = out.components.front().flat_size();
    if (flat.size() != block * static_cast<Index>(out.components.size()))
        throw UsageError("CompatibleCochain::from_flat: length mismatch");
    for (std::size_t k = 0; k < out.components.size(); ++k)
        out.components[k] =
            Cochain::from_flat(degree, source_dim, target_dim, flat.segment(static_cast<Index>(k) * block, block));
    return out;
}

bool CompatibleCochain::is_zero() const {
    for (const Cochain& c : components)
        if (!c.is_zero()) return false;
    return true;
}

CompatibleCochain& CompatibleCochain::operator+=(const CompatibleCochain& other) {
    if (degree != other.degree || components.size() != other.components.size())
        throw UsageError("CompatibleCochain: operands have different degrees");
    for (std::size_t k = 0; k < components.size(); ++k) components[k] += other.components[k];
    return *this;
}

CompatibleCochain& CompatibleCochain::operator-=(const CompatibleCochain& other) {
    if (degree != other.degree || components.size() != other.components.size())
        throw UsageError("CompatibleCochain: operands have different degrees");
    for (std::size_t k = 0; k < components.size(); ++k) components[k] -= other.components[k];
    return *this;
}

CompatibleCochain& CompatibleCochain::operator*=(const Rational& s) {
    for (Cochain& c : components) c *= s;
    return *this;
}

CompatibleDifferential::CompatibleDifferential(const CompatibleHomLieAlgebra& c, const Representation& v, bool validate)
    : first_(c.component(0), v.component(0), false), second_(c.component(1), v.component(1), false) {
    if (validate) {
        ValidationReport report = verify_structure(c);
        report.append(verify_structure(c, v), "representation.");
        require_valid(report, "CompatibleDifferential");
    }
}

CompatibleCochain CompatibleDifferential::apply_unchecked(const CompatibleCochain& f) const {
    require_layout(f, "CompatibleDifferential");
    if (f.degree == 0) return {1, {first_.apply_unchecked(f.components[0])}};
    const int n = f.degree;
    CompatibleCochain out{n + 1, {}};
    for (int k = 0; k <= n; ++k) {
        Cochain term = Cochain::zero(n + 1, first_.algebra().dim(), first_.representation().vdim());
        if (k < n) term += first_.apply_unchecked(f.components[static_cast<std::size_t>(k)]);
        if (k >= 1) term += second_.apply_unchecked(f.components[static_cast<std::size_t>(k - 1)]);
        out.components.push_back(std::move(term));
    }
    return out;
}

CompatibleCochain CompatibleDifferential::apply(const CompatibleCochain& f) const {
    require_layout(f, "CompatibleDifferential");
    const Matrix& alpha = first_.algebra().alpha();
    const Matrix& beta = first_.representation().beta();
    for (const Cochain& c : f.components) {
        require_shape(c, first_.algebra().dim(), beta.rows(), "CompatibleDifferential");
        if (!is_equivariant(c, alpha, beta))
            throw PreconditionError("CompatibleDifferential: component is not equivariant");
    }
    if (f.degree == 0) {
        const Representation both(beta, {first_.representation().actions()[0], second_.representation().actions()[0]});
        if (!in_compatible_zero_space(both, f.components[0].coeffs().col(0)))
            throw PreconditionError("CompatibleDifferential: 0-cochain is not in C^0_cHom (x ._1 v != x ._2 v)");
    }
    return apply_unchecked(f);
}

CompatibleCochain compatible_coboundary(const CompatibleHomLieAlgebra& c, const Representation& v,
                                        const CompatibleCochain& f) {
    return CompatibleDifferential(c, v).apply(f);
}

bool in_compatible_zero_space(const Representation& v, const Vector& value) {
    if (value.size() != v.vdim()) throw UsageError("in_compatible_zero_space: vector length mismatch");
    if (v.beta() * value != value) return false;
    for (int b = 1; b < v.action_count(); ++b)
        for (int i = 0; i < v.base_dim(); ++i)
            if (v.actions()[static_cast<std::size_t>(b)][static_cast<std::size_t>(i)] * value !=
                v.actions()[0][static_cast<std::size_t>(i)] * value)
                return false;
    return true;
}

std::vector<CompatibleCochain> compatible_cochain_basis(const Matrix& alpha, const Representation& v, int n) {
    if (n < 0) throw UsageError("compatible_cochain_basis: negative degree");
    const int d = static_cast<int>(alpha.rows());
    if (v.base_dim() != d) throw UsageError("compatible_cochain_basis: representation base dimension mismatch");
    std::vector<CompatibleCochain> out;
    if (n == 0) {
        for (const Vector& z : zero_space(v)) out.push_back({0, {Cochain::constant(d, z)}});
        return out;
    }
    const auto hom = hom_cochain_basis(alpha, v.beta(), n);
    for (int k = 0; k < n; ++k)
        for (const Cochain& b : hom) {
            CompatibleCochain e = CompatibleCochain::zero(n, d, v.vdim());
            e.components[static_cast<std::size_t>(k)] = b;
            out.push_back(std::move(e));
        }
    return out;
}

namespace {

std::vector<Vector> flatten_all(const std::vector<CompatibleCochain>& xs) {
    std::vector<Vector> out;
    out.reserve(xs.size());
    for (const CompatibleCochain& x : xs) out.push_back(x.flatten());
    return out;
}

CompatibleCochain combine(const std::vector<CompatibleCochain>& basis, const Vector& coords) {
    CompatibleCochain out = Rational(0) * basis.front();
    for (std::size_t k = 0; k < basis.size(); ++k)
        if (coords(static_cast<Index>(k)) != 0) out += coords(static_cast<Index>(k)) * basis[k];
    return out;
}

using Basis = std::function<std::vector<CompatibleCochain>(int)>;
using Differential = std::function<CompatibleCochain(const CompatibleCochain&)>;

CohomologyReport compute_cohomology(Flavor flavor, int n, int source_dim, Index target_dim, const Basis& basis,
                                    const Differential& delta) {
    if (n < 0) throw UsageError("cohomology_dimensions: negative degree");
    CohomologyReport r;
    r.flavor = flavor;
    r.degree = n;
    r.source_dim = source_dim;
    r.target_dim = target_dim;

    const auto cochains = basis(n);
    r.dim_cochains = static_cast<Index>(cochains.size());
    if (!cochains.empty()) {
        std::vector<Vector> images;
        for (const CompatibleCochain& f : cochains) images.push_back(delta(f).flatten());
        const Matrix map = stack_columns<Rational>(images, images.front().size());
        for (const Vector& k : kernel_basis(map)) r.cocycle_basis.push_back(combine(cochains, k));
    }
    r.dim_cocycles = static_cast<Index>(r.cocycle_basis.size());

    if (n > 0) {
        std::vector<CompatibleCochain> images;
        for (const CompatibleCochain& f : basis(n - 1)) images.push_back(delta(f));
        const auto flats = flatten_all(images);
        for (Index p : flats.empty() ? std::vector<Index>{} : rref(stack_columns<Rational>(flats, flats.front().size())).pivots)
            r.coboundary_basis.push_back(images[static_cast<std::size_t>(p)]);
    }
    r.dim_coboundaries = static_cast<Index>(r.coboundary_basis.size());

    const auto z_flat = flatten_all(r.cocycle_basis);
    const auto b_flat = flatten_all(r.coboundary_basis);
    r.dim_cohomology = quotient_dimension<Rational>(z_flat, b_flat);

    // Complete B to a basis of Z with cocycle-basis vectors, first-come.
    std::vector<Vector> current = b_flat;
    Index current_rank = static_cast<Index>(current.size());
    for (std::size_t k = 0; k < z_flat.size(); ++k) {
        current.push_back(z_flat[k]);
        const Index next = span_dimension<Rational>(current);
        if (next > current_rank) {
            current_rank = next;
            r.cohomology_basis.push_back(r.cocycle_basis[k]);
        } else {
            current.pop_back();
        }
    }
    if (static_cast<Index>(r.cohomology_basis.size()) != r.dim_cohomology)
        throw ContractError("cohomology_dimensions: representative count disagrees with dim H");
    return r;
}

} // namespace

CompatibleCochain CohomologyReport::representative(const Vector& coords) const {
    if (coords.size() != static_cast<Index>(cohomology_basis.size()))
        throw UsageError("CohomologyReport::representative: expected " + std::to_string(cohomology_basis.size()) +
                         " coordinates");
    if (cohomology_basis.empty()) {
        if (flavor == Flavor::Compatible) return CompatibleCochain::zero(degree, source_dim, target_dim);
        return {degree, {Cochain::zero(degree, source_dim, target_dim)}};
    }
    return combine(cohomology_basis, coords);
}

Vector CohomologyReport::class_coordinates(const CompatibleCochain& z) const {
    const Vector flat = z.flatten();
    std::vector<Vector> columns = flatten_all(coboundary_basis);
    const auto reps = flatten_all(cohomology_basis);
    columns.insert(columns.end(), reps.begin(), reps.end());
    if (columns.empty()) {
        if (!is_zero(flat)) throw PreconditionError("class_coordinates: cochain is not a cocycle");
        return Vector(0);
    }
    if (flat.size() != columns.front().size()) throw UsageError("class_coordinates: cochain has the wrong shape");
    const auto x = solve(stack_columns<Rational>(columns, flat.size()), flat);
    if (!x) throw PreconditionError("class_coordinates: cochain is not a cocycle");
    return x->tail(static_cast<Index>(reps.size()));
}

Vector CohomologyReport::class_coordinates(const Cochain& z) const {
    return class_coordinates(CompatibleCochain{z.arity(), {z}});
}

CohomologyReport cohomology_dimensions(const HomLieAlgebra& l, const Representation& v, int n) {
    const CeDifferential delta(l, v);
    const int d = l.dim();
    const Index t = v.vdim();
    return compute_cohomology(
        Flavor::Plain, n, d, t,
        [&](int k) {
            std::vector<CompatibleCochain> out;
            for (Cochain& b : hom_cochain_basis(l.alpha(), v.beta(), k)) out.push_back({k, {std::move(b)}});
            return out;
        },
        [&](const CompatibleCochain& f) { return CompatibleCochain{f.degree + 1, {delta.apply_unchecked(f.components[0])}}; });
}

CohomologyReport cohomology_dimensions(const CompatibleHomLieAlgebra& c, const Representation& v, int n) {
    const CompatibleDifferential delta(c, v);
    return compute_cohomology(
        Flavor::Compatible, n, c.dim(), v.vdim(), [&](int k) { return compatible_cochain_basis(c.alpha(), v, k); },
        [&](const CompatibleCochain& f) { return delta.apply_unchecked(f); });
}

namespace {

// Derivations solved as the kernel of the linear map D |-> (beta D - D alpha, the
// derivation defects on every basis pair for every bracket), assembled column by
// column from elementary matrices.
DerivationSpace solve_derivations(const Matrix& alpha, const std::vector<HomLieAlgebra>& brackets,
                                  const Representation& v) {
    const int d = static_cast<int>(alpha.rows());
    const Index t = v.vdim();
    const Index unknowns = t * d;
    const auto pairs = combinations(d, 2);

    auto constraints = [&](const Matrix& dm) {
        std::vector<Vector> parts;
        parts.push_back((v.beta() * dm - dm * alpha).reshaped());
        for (std::size_t b = 0; b < brackets.size(); ++b) {
            const auto& table = v.actions()[b];
            for (const IndexTuple& p : pairs) {
                const int i = p[0];
                const int j = p[1];
                parts.push_back(dm * brackets[b].on_basis(i, j) - table[static_cast<std::size_t>(i)] * dm.col(j) +
                                table[static_cast<std::size_t>(j)] * dm.col(i));
            }
        }
        Index size = 0;
        for (const Vector& part : parts) size += part.size();
        Vector out(size);
        Index at = 0;
        for (const Vector& part : parts) {
            out.segment(at, part.size()) = part;
            at += part.size();
        }
        return out;
    };

    DerivationSpace out;
    if (unknowns == 0) return out;
    std::vector<Vector> columns;
    for (Index u = 0; u < unknowns; ++u) {
        Matrix unit = Matrix::Zero(t, d);
        unit(u % t, u / t) = 1;
        columns.push_back(constraints(unit));
    }
    const Matrix system = stack_columns<Rational>(columns, columns.front().size());
    std::vector<Vector> der_flat;
    for (const Vector& k : kernel_basis(system)) {
        der_flat.push_back(k);
        out.derivations.push_back(k.reshaped(t, d));
    }

    std::vector<Vector> spanning;
    for (const Vector& z : zero_space(v)) {
        Matrix dm(t, d);
        for (int i = 0; i < d; ++i) dm.col(i) = v.actions()[0][static_cast<std::size_t>(i)] * z;
        spanning.push_back(dm.reshaped());
    }
    const auto inner_flat = independent_subset<Rational>(spanning);
    for (const Vector& k : inner_flat) out.inner.push_back(k.reshaped(t, d));
    out.outer_dim = quotient_dimension<Rational>(der_flat, inner_flat);
    return out;
}

} // namespace

DerivationSpace derivation_space(const CompatibleHomLieAlgebra& c, const Representation& v) {
    ValidationReport report = verify_structure(c);
    report.append(verify_structure(c, v), "representation.");
    require_valid(report, "derivation_space");
    return solve_derivations(c.alpha(), {c.component(0), c.component(1)}, v);
}

DerivationSpace derivation_space(const HomLieAlgebra& l, const Representation& v) {
    ValidationReport report = verify_structure(l);
    report.append(verify_structure(l, v), "representation.");
    require_valid(report, "derivation_space");
    return solve_derivations(l.alpha(), {l}, v);
}

Cochain comparison_map(const CompatibleCochain& f) {
    require_layout(f, "comparison_map");
    if (f.degree == 0) return Rational(1, 2) * f.components[0];
    Cochain sum = f.components.front();
    for (std::size_t k = 1; k < f.components.size(); ++k) sum += f.components[k];
    return sum;
}

} // namespace hlie
