#include "hlie/cli.hpp"

#include "hlie/cohomology.hpp"
#include "hlie/deformation.hpp"
#include "hlie/document.hpp"
#include "hlie/extension.hpp"
#include "json_text.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <sstream>

namespace hlie::cli {

using nlohmann::json;

std::uint64_t fnv1a64(std::string_view bytes, std::uint64_t seed) {
    std::uint64_t h = seed;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

namespace {

// ---------------------------------------------------------------------------
// JSON building blocks

json vector_json(const Vector& v) {
    json out = json::array();
    for (Index k = 0; k < v.size(); ++k) out.push_back(to_string(v(k)));
    return out;
}

json matrix_json(const Matrix& m) {
    json out = json::array();
    for (Index r = 0; r < m.rows(); ++r) out.push_back(vector_json(m.row(r).transpose()));
    return out;
}

json matrices_json(const std::vector<Matrix>& ms) {
    json out = json::array();
    for (const Matrix& m : ms) out.push_back(matrix_json(m));
    return out;
}

// Nonzero values of a cochain, keyed by their increasing index tuple.
json cochain_json(const Cochain& f) {
    json out = json::array();
    const auto tuples = combinations(f.source_dim(), f.arity());
    for (std::size_t c = 0; c < tuples.size(); ++c) {
        const Vector v = f.coeffs().col(static_cast<Index>(c));
        if (!is_zero(v)) out.push_back({{"indices", tuples[c]}, {"value", vector_json(v)}});
    }
    return out;
}

// Names for witness indices; empty when the indices are not basis indices of the algebra.
using Names = std::vector<std::string>;

json witness_json(const Witness& w, const Names& names) {
    json out{{"indices", w.indices}, {"defect", vector_json(w.defect)}};
    if (!names.empty()) {
        json basis = json::array();
        for (int i : w.indices) basis.push_back(i >= 0 && static_cast<std::size_t>(i) < names.size() ? names[static_cast<std::size_t>(i)] : "?");
        out["basis"] = std::move(basis);
    }
    return out;
}

json check_json(const Check& c, const Names& names) {
    json ws = json::array();
    for (const Witness& w : c.witnesses) ws.push_back(witness_json(w, names));
    return {{"name", c.name}, {"passed", c.passed}, {"witnesses", std::move(ws)}};
}

json report_json(const ValidationReport& r, const Names& names) {
    json out = json::array();
    for (const Check& c : r.checks) out.push_back(check_json(c, names));
    return out;
}

Check cochain_check(std::string name, const Cochain& residual) {
    Check check{std::move(name), true, {}};
    const auto tuples = combinations(residual.source_dim(), residual.arity());
    for (std::size_t c = 0; c < tuples.size(); ++c) {
        const Vector v = residual.coeffs().col(static_cast<Index>(c));
        if (!is_zero(v)) {
            check.passed = false;
            check.witnesses.push_back({tuples[c], v});
        }
    }
    return check;
}

json algebra_json(const CompatibleHomLieAlgebra& c) {
    json brackets = json::array();
    for (int k = 0; k < 2; ++k) brackets.push_back(cochain_json(c.bracket(k)));
    return {{"dimension", c.dim()}, {"alpha", matrix_json(c.alpha())}, {"brackets", std::move(brackets)}};
}

// ---------------------------------------------------------------------------
// Command plumbing

struct Options {
    std::string format = "human";
    std::string document;
    std::optional<int> degree;
    std::string flavor;
    std::string op;
};

struct Outcome {
    json results = json::object();
    int exit = kExitOk;
};

class Context {
public:
    Context(const Options& o, AlgebraDocument d) : opts(o), doc(std::move(d)) {}

    const Options& opts;
    AlgebraDocument doc;

    const Names& names() const { return doc.basis_names; }

    CompatibleHomLieAlgebra require_compatible(const char* command) const {
        if (!doc.is_compatible())
            throw UsageError(std::string(command) + " needs a document with two brackets");
        return doc.compatible();
    }

    const OperatorSpec& require_operator(OperatorKind kind) const {
        if (opts.op.empty()) throw UsageError("--operator is required");
        const OperatorSpec* spec = doc.find_operator(opts.op);
        if (!spec) throw UsageError("no operator named '" + opts.op + "' in the document");
        if (spec->kind != kind)
            throw UsageError("operator '" + opts.op + "' is not of kind " +
                             (kind == OperatorKind::Nijenhuis ? "nijenhuis" : "rota-baxter"));
        return *spec;
    }
};

// ---------------------------------------------------------------------------
// Subcommands

Outcome cmd_verify(const Context& ctx) {
    Outcome o;
    const AlgebraDocument& doc = ctx.doc;
    const ValidationReport structure =
        doc.is_compatible() ? verify_structure(doc.compatible()) : verify_structure(doc.algebra());
    o.results["structure"] = report_json(structure, ctx.names());
    bool passed = structure.passed();
    if (doc.representation) {
        const Representation rep = doc.representation_or_adjoint();
        const ValidationReport r =
            doc.is_compatible() ? verify_structure(doc.compatible(), rep) : verify_structure(doc.algebra(), rep);
        o.results["representation"] = report_json(r, {});
        passed = passed && r.passed();
    }
    o.results["passed"] = passed;
    o.exit = passed ? kExitOk : kExitFailed;
    return o;
}

json dimension_row(const CohomologyReport& r) {
    return {{"degree", r.degree},
            {"cochains", r.dim_cochains},
            {"cocycles", r.dim_cocycles},
            {"coboundaries", r.dim_coboundaries},
            {"cohomology", r.dim_cohomology}};
}

Outcome cmd_cohomology(const Context& ctx) {
    Outcome o;
    const AlgebraDocument& doc = ctx.doc;
    std::string flavor = ctx.opts.flavor;
    if (flavor.empty()) flavor = doc.is_compatible() ? "compatible" : "plain";
    if (flavor == "compatible" && !doc.is_compatible())
        throw UsageError("--flavor compatible needs a document with two brackets");

    std::vector<int> degrees;
    if (ctx.opts.degree) degrees.push_back(*ctx.opts.degree);
    else degrees = {0, 1, 2, 3};

    const Representation rep = doc.representation_or_adjoint();
    o.results["flavor"] = flavor;
    o.results["coefficients"] = doc.representation ? "representation" : "adjoint";

    // The plain complex of a two-bracket document is that of g+ = (g, [,]_1 + [,]_2).
    auto plain_rows = [&]() {
        json rows = json::array();
        if (doc.is_compatible()) {
            const HomLieAlgebra sum = sum_bracket(doc.compatible(), 1, 1);
            const Representation sum_rep = sum_representation(rep, 1, 1);
            for (int n : degrees) rows.push_back(dimension_row(cohomology_dimensions(sum, sum_rep, n)));
        } else {
            for (int n : degrees) rows.push_back(dimension_row(cohomology_dimensions(doc.algebra(), rep, n)));
        }
        return rows;
    };

    if (flavor == "compatible") {
        json rows = json::array();
        for (int n : degrees) rows.push_back(dimension_row(cohomology_dimensions(doc.compatible(), rep, n)));
        o.results["dimensions"] = std::move(rows);
        o.results["sum_algebra_dimensions"] = plain_rows();
    } else {
        o.results["dimensions"] = plain_rows();
    }
    return o;
}

Outcome cmd_derivations(const Context& ctx) {
    Outcome o;
    const AlgebraDocument& doc = ctx.doc;
    const Representation rep = doc.representation_or_adjoint();
    const DerivationSpace s =
        doc.is_compatible() ? derivation_space(doc.compatible(), rep) : derivation_space(doc.algebra(), rep);
    o.results["coefficients"] = doc.representation ? "representation" : "adjoint";
    o.results["derivations"] = s.derivations.size();
    o.results["inner"] = s.inner.size();
    o.results["outer"] = s.outer_dim;
    o.results["derivation_basis"] = matrices_json(s.derivations);
    o.results["inner_basis"] = matrices_json(s.inner);
    return o;
}

Outcome cmd_nijenhuis(const Context& ctx) {
    Outcome o;
    const AlgebraDocument& doc = ctx.doc;
    const LinearOperator op = ctx.require_operator(OperatorKind::Nijenhuis).to_operator();
    o.results["operator"] = ctx.opts.op;

    if (!doc.is_compatible()) {
        const HomLieAlgebra l = doc.algebra();
        const ValidationReport r = verify_operator(l, op);
        o.results["checks"] = report_json(r, ctx.names());
        o.exit = r.passed() ? kExitOk : kExitFailed;
        if (r.passed()) {
            const HomLieAlgebra induced = induced_bracket(l, op);
            o.results["induced_bracket"] = cochain_json(induced.bracket());
            const CompatibleHomLieAlgebra pair(l.alpha(), l.bracket(), induced.bracket());
            o.results["pair_structure"] = report_json(verify_structure(pair), ctx.names());
        }
        return o;
    }

    const CompatibleHomLieAlgebra c = doc.compatible();
    const ValidationReport r = verify_operator(c, op);
    o.results["checks"] = report_json(r, ctx.names());
    o.exit = r.passed() ? kExitOk : kExitFailed;
    if (r.passed() && verify_structure(c).passed()) {
        const LinearGenerator g = trivial_deformation_from_nijenhuis(c, op);
        const LinearGeneratorReport gr = check_linear_generator(c, g);
        const LinearGenerator zero{Cochain::zero(2, c.dim(), c.dim()), Cochain::zero(2, c.dim(), c.dim())};
        o.results["generator"] = {
            {"omega1", cochain_json(g.omega1)},
            {"omega2", cochain_json(g.omega2)},
            {"is_cocycle", gr.is_cocycle},
            {"is_compatible_structure", gr.is_compatible_structure},
            {"trivial_equivalence", report_json(check_linear_equivalence(c, g, zero, op.matrix), ctx.names())}};
    }
    return o;
}

Outcome cmd_rota_baxter(const Context& ctx) {
    Outcome o;
    const AlgebraDocument& doc = ctx.doc;
    const LinearOperator op = ctx.require_operator(OperatorKind::RotaBaxter).to_operator();
    o.results["operator"] = ctx.opts.op;
    o.results["weight"] = to_string(op.weight);

    if (doc.is_compatible()) {
        const ValidationReport r = verify_operator(doc.compatible(), op);
        o.results["checks"] = report_json(r, ctx.names());
        o.exit = r.passed() ? kExitOk : kExitFailed;
        return o;
    }

    const HomLieAlgebra l = doc.algebra();
    const ValidationReport r = verify_operator(l, op);
    o.results["checks"] = report_json(r, ctx.names());
    o.exit = r.passed() ? kExitOk : kExitFailed;

    const LinearOperator companion = rb_companion(op);
    const RotaBaxterPair pair = rb_pair(l, op, companion);
    json p{{"companion", matrix_json(companion.matrix)}, {"checks", report_json(pair.report, ctx.names())}};
    if (pair.induced) {
        p["induced_brackets"] = {cochain_json(pair.induced->bracket(0)), cochain_json(pair.induced->bracket(1))};
        p["induced_structure"] = report_json(verify_structure(*pair.induced), ctx.names());
    }
    o.results["pair"] = std::move(p);
    return o;
}

OrderPDeformation document_deformation(const Context& ctx, const char* command) {
    const CompatibleHomLieAlgebra c = ctx.require_compatible(command);
    if (!ctx.doc.deformation) throw UsageError(std::string(command) + " needs a deformation block");
    return OrderPDeformation(c, ctx.doc.deformation->coeffs1, ctx.doc.deformation->coeffs2);
}

json identities_json(const OrderPReport& r, const Names& names) {
    json out = json::array();
    for (const OrderResidual& res : r.identities) {
        ValidationReport v;
        v.checks.push_back(cochain_check("first", res.first));
        v.checks.push_back(cochain_check("second", res.second));
        v.checks.push_back(cochain_check("mixed", res.mixed));
        out.push_back({{"n", res.n}, {"passed", v.passed()}, {"checks", report_json(v, names)}});
    }
    return out;
}

Outcome cmd_deform_verify(const Context& ctx) {
    Outcome o;
    const OrderPDeformation d = document_deformation(ctx, "deform-verify");
    const OrderPReport r = verify_order_p(d);
    o.results["order"] = d.order();
    o.results["identities"] = identities_json(r, ctx.names());
    o.results["paths_agree"] = r.paths_agree;
    o.results["passed"] = r.passed() && r.paths_agree;
    if (const auto f = r.first_failure()) o.results["first_failure"] = *f;
    o.exit = r.passed() && r.paths_agree ? kExitOk : kExitFailed;
    return o;
}

Outcome cmd_deform_obstruct(const Context& ctx) {
    Outcome o;
    const OrderPDeformation d = document_deformation(ctx, "deform-obstruct");
    const OrderPReport r = verify_order_p(d);
    o.results["order"] = d.order();
    if (!r.passed()) {
        o.results["identities"] = identities_json(r, ctx.names());
        o.results["first_failure"] = *r.first_failure();
        o.exit = kExitFailed;
        return o;
    }
    const CompatibleHomLieAlgebra& c = d.base();
    const CompatibleCochain ob = obstruction(d);
    json comps = json::array();
    for (const Cochain& f : ob.components) comps.push_back(cochain_json(f));
    o.results["obstruction"] = std::move(comps);
    o.results["obstruction_is_zero"] = ob.is_zero();
    const CohomologyReport h3 = cohomology_dimensions(c, adjoint_representation(c), 3);
    o.results["h3_dimension"] = h3.dim_cohomology;
    o.results["class"] = vector_json(h3.class_coordinates(ob));
    const auto next = is_extensible(d);
    o.results["extensible"] = next.has_value();
    if (next) o.results["next_coefficients"] = {cochain_json(next->first), cochain_json(next->second)};
    return o;
}

struct DocumentExtension {
    CompatibleHomLieAlgebra base;
    Representation rep;
    ExtensionCocycle z;
};

DocumentExtension document_extension(const Context& ctx, const char* command) {
    const CompatibleHomLieAlgebra c = ctx.require_compatible(command);
    if (!ctx.doc.extension) throw UsageError(std::string(command) + " needs an extension block");
    const ExtensionSpec& e = *ctx.doc.extension;
    return {c, ctx.doc.representation_or_adjoint(), {e.cocycle[0], e.cocycle[1]}};
}

AbelianExtension shifted(const AbelianExtension& e, const std::optional<Matrix>& tau) {
    if (!tau) return e;
    return e.with_splitting(e.splitting() + e.inclusion() * *tau);
}

Outcome cmd_extension_build(const Context& ctx) {
    Outcome o;
    const auto [c, rep, z] = document_extension(ctx, "extension-build");
    const AbelianExtension canonical = build_extension(c, rep, z);
    const AbelianExtension e = shifted(canonical, ctx.doc.extension->splitting_shift);
    o.results["total"] = algebra_json(e.total());
    o.results["inclusion"] = matrix_json(e.inclusion());
    o.results["projection"] = matrix_json(e.projection());
    o.results["splitting"] = matrix_json(e.splitting());
    o.results["checks"] = report_json(
        verify_extension(e.base(), e.beta(), e.total(), e.inclusion(), e.projection(), e.splitting()), {});
    // Read back through the canonical splitting; the requested splitting shifts the
    // cocycle by a coboundary and is reported separately.
    const auto [rep_back, z_back] = extract_cocycle(canonical);
    o.results["round_trip"] = z_back == z && rep_back.actions() == rep.actions();
    const ExtensionCocycle z_split = extract_cocycle(e).second;
    o.results["extracted_cocycle"] = {cochain_json(z_split.f1), cochain_json(z_split.f2)};
    o.results["class"] = vector_json(ext_class(e));
    return o;
}

Outcome cmd_extension_classify(const Context& ctx) {
    Outcome o;
    const auto [c, rep, z] = document_extension(ctx, "extension-classify");
    const CohomologyReport h2 = cohomology_dimensions(c, rep, 2);
    o.results["h2_dimension"] = h2.dim_cohomology;
    o.results["class"] = vector_json(h2.class_coordinates(z.as_cochain()));
    const ExtensionSpec& spec = *ctx.doc.extension;
    if (spec.compare_cocycle) {
        const ExtensionCocycle z2{(*spec.compare_cocycle)[0], (*spec.compare_cocycle)[1]};
        o.results["compare_class"] = vector_json(h2.class_coordinates(z2.as_cochain()));
        const AbelianExtension e1 = shifted(build_extension(c, rep, z), spec.splitting_shift);
        const AbelianExtension e2 = build_extension(c, rep, z2);
        const auto phi = check_equivalence(e1, e2);
        o.results["equivalent"] = phi.has_value();
        if (phi) o.results["phi"] = matrix_json(*phi);
    }
    return o;
}

Outcome cmd_mc_check(const Context& ctx) {
    Outcome o;
    const AlgebraDocument& doc = ctx.doc;
    const Cochain& mu1 = doc.brackets[0];
    const Cochain mu2 = doc.is_compatible() ? doc.brackets[1] : Cochain::zero(2, doc.dimension, doc.dimension);
    const McResiduals r = is_mc_pair(mu1, mu2, doc.alpha);
    ValidationReport v;
    v.checks.push_back(cochain_check("[mu1,mu1]", r.first));
    v.checks.push_back(cochain_check("[mu2,mu2]", r.second));
    v.checks.push_back(cochain_check("[mu1,mu2]", r.mixed));
    o.results["checks"] = report_json(v, ctx.names());
    o.results["is_mc"] = r.is_mc();
    o.exit = r.is_mc() ? kExitOk : kExitFailed;
    return o;
}

// ---------------------------------------------------------------------------
// Human-readable rendering of a results tree

bool is_check(const json& j) { return j.is_object() && j.contains("name") && j.contains("passed") && j.contains("witnesses"); }
bool is_cochain_value(const json& j) { return j.is_object() && j.size() == 2 && j.contains("indices") && j.contains("value"); }
bool is_dimension_row(const json& j) { return j.is_object() && j.contains("degree") && j.contains("cohomology"); }

bool is_scalar_array(const json& j) {
    return j.is_array() && std::all_of(j.begin(), j.end(), [](const json& e) { return e.is_primitive(); });
}

bool is_small_matrix(const json& j) {
    return j.is_array() && !j.empty() && j.size() <= 8 && std::all_of(j.begin(), j.end(), is_scalar_array);
}

std::string inline_text(const json& j) {
    if (j.is_string()) return j.get<std::string>();
    if (j.is_primitive()) return j.dump();
    std::string s = "[";
    for (std::size_t k = 0; k < j.size(); ++k) s += (k ? ", " : "") + inline_text(j[k]);
    return s + "]";
}

std::string pad_of(int indent) { return std::string(static_cast<std::size_t>(indent), ' '); }

void render(std::ostream& out, const json& j, int indent);

void render_check(std::ostream& out, const json& c, int indent) {
    out << pad_of(indent) << (c["passed"].get<bool>() ? "PASS " : "FAIL ") << c["name"].get<std::string>() << "\n";
    for (const json& w : c["witnesses"])
        out << pad_of(indent + 2) << "at " << inline_text(w.contains("basis") ? w["basis"] : w["indices"]) << ": defect "
            << inline_text(w["defect"]) << "\n";
}

void render_entry(std::ostream& out, const std::string& key, const json& v, int indent) {
    if (v.is_primitive() || is_scalar_array(v)) {
        out << pad_of(indent) << key << ": " << inline_text(v) << "\n";
        return;
    }
    out << pad_of(indent) << key << ":\n";
    if (is_small_matrix(v)) {
        for (const json& row : v) out << pad_of(indent + 2) << inline_text(row) << "\n";
        return;
    }
    render(out, v, indent + 2);
}

void render(std::ostream& out, const json& j, int indent) {
    if (is_check(j)) {
        render_check(out, j, indent);
    } else if (is_cochain_value(j)) {
        out << pad_of(indent) << inline_text(j["indices"]) << " -> " << inline_text(j["value"]) << "\n";
    } else if (is_dimension_row(j)) {
        out << pad_of(indent) << "degree " << j["degree"] << ": cochains " << j["cochains"] << ", cocycles "
            << j["cocycles"] << ", coboundaries " << j["coboundaries"] << ", cohomology " << j["cohomology"] << "\n";
    } else if (j.is_object()) {
        for (const auto& [k, v] : j.items()) render_entry(out, k, v, indent);
    } else if (j.is_array()) {
        if (j.empty()) out << pad_of(indent) << "(none)\n";
        for (std::size_t k = 0; k < j.size(); ++k) {
            const json& e = j[k];
            if (e.is_primitive() || is_scalar_array(e)) {
                out << pad_of(indent) << inline_text(e) << "\n";
            } else if (e.is_array() || (e.is_object() && !is_check(e) && !is_cochain_value(e) && !is_dimension_row(e))) {
                render_entry(out, "[" + std::to_string(k) + "]", e, indent);
            } else {
                render(out, e, indent);
            }
        }
    } else {
        out << pad_of(indent) << inline_text(j) << "\n";
    }
}

void emit(std::ostream& out, const Options& opts, const std::string& command, const json& report) {
    if (opts.format == "machine") {
        out << dump_compact(report);
        return;
    }
    const int status = report["exit_status"].get<int>();
    out << command << ": " << (status == kExitOk ? "ok" : status == kExitFailed ? "failed" : "error") << "\n";
    render(out, report["results"], 2);
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw UsageError("cannot read '" + path + "'");
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

std::string digest(const std::string& command, const Options& o, const std::string& bytes) {
    std::string canonical = command + '\n';
    if (o.degree) canonical += "degree=" + std::to_string(*o.degree) + '\n';
    if (!o.flavor.empty()) canonical += "flavor=" + o.flavor + '\n';
    if (!o.op.empty()) canonical += "operator=" + o.op + '\n';
    canonical += '\n';
    char hex[17];
    std::snprintf(hex, sizeof hex, "%016llx", static_cast<unsigned long long>(fnv1a64(bytes, fnv1a64(canonical))));
    return std::string("fnv1a64:") + hex;
}

json error_json(const char* kind, const std::string& message) { return {{"kind", kind}, {"message", message}}; }

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    using Handler = std::function<Outcome(const Context&)>;
    struct Command {
        const char* name;
        const char* help;
        Handler handler;
    };
    const std::vector<Command> commands = {
        {"verify", "Check the Hom-Lie axioms (and representation identities, if any)", cmd_verify},
        {"cohomology", "Cohomology dimensions of the plain or compatible complex", cmd_cohomology},
        {"derivations", "Derivations, inner derivations and outer dimension", cmd_derivations},
        {"nijenhuis", "Verify a Nijenhuis operator and its induced structures", cmd_nijenhuis},
        {"rota-baxter", "Verify a Rota-Baxter operator and its companion pair", cmd_rota_baxter},
        {"deform-verify", "Check the identities of an order-p deformation", cmd_deform_verify},
        {"deform-obstruct", "Obstruction cochain, its class and extensibility", cmd_deform_obstruct},
        {"extension-build", "Build the abelian extension of a 2-cocycle", cmd_extension_build},
        {"extension-classify", "Class of a 2-cocycle; equivalence against a second one", cmd_extension_classify},
        {"mc-check", "Maurer-Cartan residuals of the bracket pair", cmd_mc_check},
    };

    Options opts;
    CLI::App app{"Exact computations with compatible Hom-Lie algebras", "hlie"};
    app.require_subcommand(1);
    app.add_option("--format", opts.format, "Output format")
        ->check(CLI::IsMember({"human", "machine"}))
        ->capture_default_str();
    std::map<std::string, CLI::App*> subs;
    for (const Command& c : commands) {
        CLI::App* sub = app.add_subcommand(c.name, c.help);
        sub->fallthrough();
        sub->add_option("document", opts.document, "Input JSON document")->required();
        const std::string name = c.name;
        if (name == "cohomology") {
            sub->add_option("--degree", opts.degree, "Cohomology degree (default: 0 to 3)")->check(CLI::Range(0, 16));
            sub->add_option("--flavor", opts.flavor, "plain or compatible")->check(CLI::IsMember({"plain", "compatible"}));
        }
        if (name == "nijenhuis" || name == "rota-baxter")
            sub->add_option("--operator", opts.op, "Operator name in the document")->required();
        subs[name] = sub;
    }

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    const Command* chosen = nullptr;
    for (const Command& c : commands)
        if (subs[c.name]->parsed()) chosen = &c;
    const std::string command = chosen->name;

    json report{{"command", command}, {"schema_version", kReportSchemaVersion}};
    std::string bytes;
    try {
        bytes = read_file(opts.document);
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    report["inputs_digest"] = digest(command, opts, bytes);

    int status = kExitOk;
    try {
        Context ctx(opts, parse_document(bytes));
        Outcome o = chosen->handler(ctx);
        report["results"] = std::move(o.results);
        status = o.exit;
    } catch (const DocumentError& e) {
        json error = error_json("parse", e.what());
        if (!e.path().empty()) error["path"] = e.path();
        report["results"] = {{"error", std::move(error)}};
        status = kExitUsage;
        err << "error: " << e.what() << "\n";
    } catch (const UsageError& e) {
        report["results"] = {{"error", error_json("usage", e.what())}};
        status = kExitUsage;
        err << "error: " << e.what() << "\n";
    } catch (const InvalidStructureError& e) {
        json error = error_json("precondition", e.what());
        error["checks"] = report_json(e.report(), {});
        report["results"] = {{"error", std::move(error)}};
        status = kExitFailed;
    } catch (const PreconditionError& e) {
        report["results"] = {{"error", error_json("precondition", e.what())}};
        status = kExitFailed;
    } catch (const ContractError& e) {
        report["results"] = {{"error", error_json("internal", e.what())}};
        status = kExitFailed;
        err << "internal error: " << e.what() << "\n";
    }
    report["exit_status"] = status;
    emit(out, opts, command, report);
    return status;
}

} // namespace hlie::cli
