#include "hlie/document.hpp"

#include "json_text.hpp"

#include <set>

namespace hlie {

using nlohmann::json;

namespace {

std::string child(const std::string& path, const std::string& key) { return path + "/" + key; }
std::string child(const std::string& path, std::size_t k) { return path + "/" + std::to_string(k); }

std::pair<std::size_t, std::size_t> line_column(std::string_view text, std::size_t byte) {
    std::size_t line = 1, column = 1;
    for (std::size_t k = 0; k < byte && k < text.size(); ++k) {
        if (text[k] == '\n') {
            ++line;
            column = 1;
        } else {
            ++column;
        }
    }
    return {line, column};
}

void reject_unknown(const json& obj, const std::string& path, std::initializer_list<const char*> allowed) {
    for (const auto& [key, _] : obj.items()) {
        bool known = false;
        for (const char* a : allowed) known = known || key == a;
        if (!known) throw DocumentError(child(path, key), "unknown field");
    }
}

const json& object_at(const json& parent, const std::string& path, const char* key) {
    const std::string p = child(path, key);
    if (!parent.contains(key)) throw DocumentError(p, "missing required field");
    return parent.at(key);
}

void expect(bool ok, const std::string& path, const char* what) {
    if (!ok) throw DocumentError(path, std::string("expected ") + what);
}

int get_int(const json& j, const std::string& path, int lo, int hi) {
    expect(j.is_number_integer(), path, "an integer");
    const auto v = j.get<long long>();
    if (v < lo || v > hi)
        throw DocumentError(path, "value " + std::to_string(v) + " outside [" + std::to_string(lo) + ", " +
                                      std::to_string(hi) + "]");
    return static_cast<int>(v);
}

Rational get_rational(const json& j, const std::string& path) {
    expect(j.is_string(), path, "a rational string such as \"1/3\"");
    try {
        return parse_rational(j.get<std::string>());
    } catch (const UsageError& e) {
        throw DocumentError(path, e.what());
    }
}

Vector get_vector(const json& j, const std::string& path, Index size) {
    expect(j.is_array(), path, "an array");
    if (static_cast<Index>(j.size()) != size)
        throw DocumentError(path, "expected " + std::to_string(size) + " entries, got " + std::to_string(j.size()));
    Vector v(size);
    for (std::size_t k = 0; k < j.size(); ++k) v(static_cast<Index>(k)) = get_rational(j[k], child(path, k));
    return v;
}

Matrix get_matrix(const json& j, const std::string& path, Index rows, Index cols) {
    expect(j.is_array(), path, "an array of rows");
    if (static_cast<Index>(j.size()) != rows)
        throw DocumentError(path, "expected " + std::to_string(rows) + " rows, got " + std::to_string(j.size()));
    Matrix m(rows, cols);
    for (std::size_t r = 0; r < j.size(); ++r) m.row(static_cast<Index>(r)) = get_vector(j[r], child(path, r), cols);
    return m;
}

// A table of {i, j, coefficients}: an arity-2 cochain on `dim` basis elements with
// values of length `target`.
Cochain get_table(const json& j, const std::string& path, int dim, Index target) {
    expect(j.is_array(), path, "an array of {i, j, coefficients} entries");
    Matrix coeffs = Matrix::Zero(target, static_cast<Index>(binomial(dim, 2)));
    std::set<std::pair<int, int>> seen;
    for (std::size_t k = 0; k < j.size(); ++k) {
        const std::string p = child(path, k);
        const json& e = j[k];
        expect(e.is_object(), p, "an object");
        reject_unknown(e, p, {"i", "j", "coefficients"});
        const int i = get_int(object_at(e, p, "i"), child(p, "i"), 0, dim - 1);
        const int jj = get_int(object_at(e, p, "j"), child(p, "j"), 0, dim - 1);
        if (i >= jj) throw DocumentError(p, "entries need i < j, got i = " + std::to_string(i) + ", j = " + std::to_string(jj));
        if (!seen.insert({i, jj}).second) throw DocumentError(p, "repeated pair (" + std::to_string(i) + ", " + std::to_string(jj) + ")");
        const int pair[2] = {i, jj};
        coeffs.col(combination_rank(pair, dim)) = get_vector(object_at(e, p, "coefficients"), child(p, "coefficients"), target);
    }
    return Cochain(2, dim, std::move(coeffs));
}

std::vector<Cochain> get_tables(const json& j, const std::string& path, std::size_t count, int dim, Index target) {
    expect(j.is_array(), path, "an array of tables");
    if (j.size() != count)
        throw DocumentError(path, "expected " + std::to_string(count) + " tables, got " + std::to_string(j.size()));
    std::vector<Cochain> out;
    for (std::size_t k = 0; k < j.size(); ++k) out.push_back(get_table(j[k], child(path, k), dim, target));
    return out;
}

RepresentationSpec get_representation(const json& j, const std::string& path, int dim, std::size_t brackets) {
    expect(j.is_object(), path, "an object");
    reject_unknown(j, path, {"vdim", "beta", "actions"});
    const int vdim = get_int(object_at(j, path, "vdim"), child(path, "vdim"), 1, 64);
    RepresentationSpec rep;
    rep.beta = get_matrix(object_at(j, path, "beta"), child(path, "beta"), vdim, vdim);
    const std::string ap = child(path, "actions");
    const json& actions = object_at(j, path, "actions");
    expect(actions.is_array(), ap, "an array with one list of matrices per bracket");
    if (actions.size() != brackets)
        throw DocumentError(ap, "expected " + std::to_string(brackets) + " action lists, one per bracket");
    for (std::size_t b = 0; b < actions.size(); ++b) {
        const std::string bp = child(ap, b);
        expect(actions[b].is_array(), bp, "an array of matrices");
        if (actions[b].size() != static_cast<std::size_t>(dim))
            throw DocumentError(bp, "expected one matrix per basis element (" + std::to_string(dim) + ")");
        std::vector<Matrix> per_basis;
        for (std::size_t x = 0; x < actions[b].size(); ++x)
            per_basis.push_back(get_matrix(actions[b][x], child(bp, x), vdim, vdim));
        rep.actions.push_back(std::move(per_basis));
    }
    return rep;
}

OperatorSpec get_operator(const json& j, const std::string& path, int dim) {
    expect(j.is_object(), path, "an object");
    reject_unknown(j, path, {"name", "kind", "weight", "matrix"});
    OperatorSpec op;
    const json& name = object_at(j, path, "name");
    expect(name.is_string() && !name.get<std::string>().empty(), child(path, "name"), "a non-empty string");
    op.name = name.get<std::string>();
    const json& kind = object_at(j, path, "kind");
    expect(kind.is_string(), child(path, "kind"), "\"nijenhuis\" or \"rota-baxter\"");
    if (kind == "nijenhuis") {
        op.kind = OperatorKind::Nijenhuis;
        if (j.contains("weight")) throw DocumentError(child(path, "weight"), "a Nijenhuis operator has no weight");
    } else if (kind == "rota-baxter") {
        op.kind = OperatorKind::RotaBaxter;
        op.weight = get_rational(object_at(j, path, "weight"), child(path, "weight"));
    } else {
        throw DocumentError(child(path, "kind"), "expected \"nijenhuis\" or \"rota-baxter\"");
    }
    op.matrix = get_matrix(object_at(j, path, "matrix"), child(path, "matrix"), dim, dim);
    return op;
}

DeformationSpec get_deformation(const json& j, const std::string& path, int dim) {
    expect(j.is_object(), path, "an object");
    reject_unknown(j, path, {"order", "coeffs1", "coeffs2"});
    DeformationSpec def;
    def.order = get_int(object_at(j, path, "order"), child(path, "order"), 1, 64);
    const auto n = static_cast<std::size_t>(def.order);
    def.coeffs1 = get_tables(object_at(j, path, "coeffs1"), child(path, "coeffs1"), n, dim, dim);
    def.coeffs2 = get_tables(object_at(j, path, "coeffs2"), child(path, "coeffs2"), n, dim, dim);
    return def;
}

std::array<Cochain, 2> get_pair(const json& j, const std::string& path, int dim, Index vdim) {
    auto tables = get_tables(j, path, 2, dim, vdim);
    return {std::move(tables[0]), std::move(tables[1])};
}

ExtensionSpec get_extension(const json& j, const std::string& path, int dim, Index vdim) {
    expect(j.is_object(), path, "an object");
    reject_unknown(j, path, {"cocycle", "splitting_shift", "compare_cocycle"});
    ExtensionSpec ext;
    ext.cocycle = get_pair(object_at(j, path, "cocycle"), child(path, "cocycle"), dim, vdim);
    if (j.contains("splitting_shift"))
        ext.splitting_shift = get_matrix(j["splitting_shift"], child(path, "splitting_shift"), vdim, dim);
    if (j.contains("compare_cocycle"))
        ext.compare_cocycle = get_pair(j["compare_cocycle"], child(path, "compare_cocycle"), dim, vdim);
    return ext;
}

json rational_json(const Rational& r) { return to_string(r); }

json vector_json(const Vector& v) {
    json out = json::array();
    for (Index k = 0; k < v.size(); ++k) out.push_back(rational_json(v(k)));
    return out;
}

json matrix_json(const Matrix& m) {
    json out = json::array();
    for (Index r = 0; r < m.rows(); ++r) out.push_back(vector_json(m.row(r).transpose()));
    return out;
}

json table_json(const Cochain& f) {
    json out = json::array();
    const auto pairs = combinations(f.source_dim(), 2);
    for (std::size_t c = 0; c < pairs.size(); ++c) {
        const Vector v = f.coeffs().col(static_cast<Index>(c));
        if (is_zero(v)) continue;
        out.push_back({{"i", pairs[c][0]}, {"j", pairs[c][1]}, {"coefficients", vector_json(v)}});
    }
    return out;
}

json tables_json(const std::vector<Cochain>& fs) {
    json out = json::array();
    for (const Cochain& f : fs) out.push_back(table_json(f));
    return out;
}

} // namespace

namespace {

bool same_matrices(const std::vector<Matrix>& a, const std::vector<Matrix>& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t k = 0; k < a.size(); ++k)
        if (!matrices_equal(a[k], b[k])) return false;
    return true;
}

bool same_optional(const std::optional<Matrix>& a, const std::optional<Matrix>& b) {
    return a.has_value() == b.has_value() && (!a || matrices_equal(*a, *b));
}

} // namespace

bool operator==(const RepresentationSpec& a, const RepresentationSpec& b) {
    if (!matrices_equal(a.beta, b.beta) || a.actions.size() != b.actions.size()) return false;
    for (std::size_t k = 0; k < a.actions.size(); ++k)
        if (!same_matrices(a.actions[k], b.actions[k])) return false;
    return true;
}

bool operator==(const OperatorSpec& a, const OperatorSpec& b) {
    return a.name == b.name && a.kind == b.kind && a.weight == b.weight && matrices_equal(a.matrix, b.matrix);
}

bool operator==(const DeformationSpec& a, const DeformationSpec& b) {
    return a.order == b.order && a.coeffs1 == b.coeffs1 && a.coeffs2 == b.coeffs2;
}

bool operator==(const ExtensionSpec& a, const ExtensionSpec& b) {
    return a.cocycle == b.cocycle && same_optional(a.splitting_shift, b.splitting_shift) &&
           a.compare_cocycle == b.compare_cocycle;
}

bool operator==(const AlgebraDocument& a, const AlgebraDocument& b) {
    return a.schema_version == b.schema_version && a.dimension == b.dimension && a.basis_names == b.basis_names &&
           matrices_equal(a.alpha, b.alpha) && a.brackets == b.brackets && a.representation == b.representation &&
           a.operators == b.operators && a.deformation == b.deformation && a.extension == b.extension;
}

HomLieAlgebra AlgebraDocument::algebra(int which) const {
    if (which < 0 || static_cast<std::size_t>(which) >= brackets.size())
        throw UsageError("document has no bracket " + std::to_string(which + 1));
    return HomLieAlgebra(alpha, brackets[static_cast<std::size_t>(which)]);
}

CompatibleHomLieAlgebra AlgebraDocument::compatible() const {
    if (!is_compatible()) throw UsageError("document has a single bracket; a compatible pair needs two");
    return CompatibleHomLieAlgebra(alpha, brackets[0], brackets[1]);
}

Representation AlgebraDocument::representation_or_adjoint() const {
    if (representation) return Representation(representation->beta, representation->actions);
    if (is_compatible()) return adjoint_representation(compatible());
    return adjoint_representation(algebra());
}

const OperatorSpec* AlgebraDocument::find_operator(const std::string& name) const {
    for (const OperatorSpec& op : operators)
        if (op.name == name) return &op;
    return nullptr;
}

AlgebraDocument parse_document(std::string_view text) {
    json root;
    try {
        root = json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        const auto [line, column] = line_column(text, e.byte == 0 ? 0 : e.byte - 1);
        // nlohmann's message repeats the position; keep only its description.
        const std::string what = e.what();
        const auto colon = what.find(": ", what.find("column"));
        throw DocumentError("", "syntax error at line " + std::to_string(line) + ", column " + std::to_string(column) +
                                    (colon == std::string::npos ? "" : what.substr(colon)));
    }
    const std::string path;
    expect(root.is_object(), "/", "a JSON object at the top level");
    reject_unknown(root, path,
                   {"schema_version", "dimension", "basis_names", "alpha", "brackets", "representation", "operators",
                    "deformation", "extension"});

    AlgebraDocument doc;
    const json& version = object_at(root, path, "schema_version");
    expect(version.is_string(), "/schema_version", "a string");
    if (version != kSchemaVersion)
        throw DocumentError("/schema_version", "unsupported schema version " + version.get<std::string>());
    doc.schema_version = version.get<std::string>();

    doc.dimension = get_int(object_at(root, path, "dimension"), "/dimension", 1, 64);
    const int d = doc.dimension;

    const json& names = object_at(root, path, "basis_names");
    expect(names.is_array(), "/basis_names", "an array of strings");
    if (names.size() != static_cast<std::size_t>(d))
        throw DocumentError("/basis_names", "expected " + std::to_string(d) + " names");
    std::set<std::string> unique;
    for (std::size_t k = 0; k < names.size(); ++k) {
        expect(names[k].is_string(), child("/basis_names", k), "a string");
        doc.basis_names.push_back(names[k].get<std::string>());
        if (!unique.insert(doc.basis_names.back()).second) throw DocumentError(child("/basis_names", k), "duplicate name");
    }

    doc.alpha = get_matrix(object_at(root, path, "alpha"), "/alpha", d, d);

    const json& brackets = object_at(root, path, "brackets");
    expect(brackets.is_array() && (brackets.size() == 1 || brackets.size() == 2), "/brackets",
           "an array of one or two bracket tables");
    doc.brackets = get_tables(brackets, "/brackets", brackets.size(), d, d);

    if (root.contains("representation"))
        doc.representation = get_representation(root["representation"], "/representation", d, doc.brackets.size());

    if (root.contains("operators")) {
        const json& ops = root["operators"];
        expect(ops.is_array(), "/operators", "an array");
        for (std::size_t k = 0; k < ops.size(); ++k) {
            doc.operators.push_back(get_operator(ops[k], child("/operators", k), d));
            for (std::size_t m = 0; m < k; ++m)
                if (doc.operators[m].name == doc.operators[k].name)
                    throw DocumentError(child(child("/operators", k), "name"), "duplicate operator name");
        }
    }

    if (root.contains("deformation")) doc.deformation = get_deformation(root["deformation"], "/deformation", d);

    if (root.contains("extension")) {
        const Index vdim = doc.representation ? doc.representation->beta.rows() : d;
        doc.extension = get_extension(root["extension"], "/extension", d, vdim);
    }
    return doc;
}

std::string serialize_document(const AlgebraDocument& doc) {
    json root;
    root["schema_version"] = doc.schema_version;
    root["dimension"] = doc.dimension;
    root["basis_names"] = doc.basis_names;
    root["alpha"] = matrix_json(doc.alpha);
    root["brackets"] = tables_json(doc.brackets);
    if (doc.representation) {
        json actions = json::array();
        for (const auto& per_basis : doc.representation->actions) {
            json list = json::array();
            for (const Matrix& m : per_basis) list.push_back(matrix_json(m));
            actions.push_back(std::move(list));
        }
        root["representation"] = {{"vdim", doc.representation->beta.rows()},
                                  {"beta", matrix_json(doc.representation->beta)},
                                  {"actions", std::move(actions)}};
    }
    if (!doc.operators.empty()) {
        json ops = json::array();
        for (const OperatorSpec& op : doc.operators) {
            json o{{"name", op.name}, {"matrix", matrix_json(op.matrix)}};
            if (op.kind == OperatorKind::RotaBaxter) {
                o["kind"] = "rota-baxter";
                o["weight"] = rational_json(op.weight);
            } else {
                o["kind"] = "nijenhuis";
            }
            ops.push_back(std::move(o));
        }
        root["operators"] = std::move(ops);
    }
    if (doc.deformation)
        root["deformation"] = {{"order", doc.deformation->order},
                               {"coeffs1", tables_json(doc.deformation->coeffs1)},
                               {"coeffs2", tables_json(doc.deformation->coeffs2)}};
    if (doc.extension) {
        const ExtensionSpec& e = *doc.extension;
        json ext{{"cocycle", tables_json({e.cocycle[0], e.cocycle[1]})}};
        if (e.splitting_shift) ext["splitting_shift"] = matrix_json(*e.splitting_shift);
        if (e.compare_cocycle) ext["compare_cocycle"] = tables_json({(*e.compare_cocycle)[0], (*e.compare_cocycle)[1]});
        root["extension"] = std::move(ext);
    }
    return dump_compact(root);
}

} // namespace hlie
