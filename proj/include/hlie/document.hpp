#pragma once

// JSON input documents. Rationals are strings ("p/q" or "p"), matrices are lists of
// rows, and a cochain is a table of {i, j, coefficients} entries with i < j (0-based),
// absent pairs being zero. See docs/format.md for the full schema.

#include "hlie/algebra.hpp"
#include "hlie/cochain.hpp"
#include "hlie/errors.hpp"

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace hlie {

inline constexpr const char* kSchemaVersion = "1";

/// Malformed or invalid document; `path` is a JSON pointer to the offending field.
class DocumentError : public UsageError {
public:
    DocumentError(std::string path, const std::string& message)
        : UsageError(path.empty() ? message : path + ": " + message), path_(std::move(path)) {}
    const std::string& path() const { return path_; }

private:
    std::string path_;
};

struct RepresentationSpec {
    Matrix beta;
    std::vector<std::vector<Matrix>> actions; // [bracket][basis element]

    friend bool operator==(const RepresentationSpec& a, const RepresentationSpec& b);
};

struct OperatorSpec {
    std::string name;
    OperatorKind kind = OperatorKind::Nijenhuis;
    Rational weight = 0;
    Matrix matrix;

    LinearOperator to_operator() const { return {matrix, kind, weight}; }
    friend bool operator==(const OperatorSpec& a, const OperatorSpec& b);
};

struct DeformationSpec {
    int order = 0;
    std::vector<Cochain> coeffs1; // t^1 .. t^order
    std::vector<Cochain> coeffs2;

    friend bool operator==(const DeformationSpec& a, const DeformationSpec& b);
};

struct ExtensionSpec {
    std::array<Cochain, 2> cocycle;
    /// tau : g -> V; the extension is read with splitting s + i tau.
    std::optional<Matrix> splitting_shift;
    /// Second cocycle to test for equivalence against the first.
    std::optional<std::array<Cochain, 2>> compare_cocycle;

    friend bool operator==(const ExtensionSpec& a, const ExtensionSpec& b);
};

struct AlgebraDocument {
    std::string schema_version = kSchemaVersion;
    int dimension = 0;
    std::vector<std::string> basis_names;
    Matrix alpha;
    std::vector<StructureConstants> brackets; // one or two
    std::optional<RepresentationSpec> representation;
    std::vector<OperatorSpec> operators;
    std::optional<DeformationSpec> deformation;
    std::optional<ExtensionSpec> extension;

    bool is_compatible() const { return brackets.size() == 2; }
    HomLieAlgebra algebra(int which = 0) const;
    CompatibleHomLieAlgebra compatible() const;
    /// The document's representation, or the adjoint one when absent.
    Representation representation_or_adjoint() const;
    const OperatorSpec* find_operator(const std::string& name) const;

    friend bool operator==(const AlgebraDocument& a, const AlgebraDocument& b);
};

/// Strict parse: unknown fields, wrong types, out-of-range indices, i >= j, bad lengths
/// and malformed rationals all raise DocumentError.
AlgebraDocument parse_document(std::string_view text);

/// Canonical JSON text (sorted keys, zero cochain entries omitted).
std::string serialize_document(const AlgebraDocument& doc);

} // namespace hlie
