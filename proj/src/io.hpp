#pragma once

#include <cstdint>
#include <json.hpp>
#include <map>
#include <string>
#include <vector>

#include "bounds.hpp"
#include "division.hpp"
#include "graded.hpp"
#include "morphism.hpp"

namespace gkoszul {

inline constexpr const char* kToolVersion = "0.1.0";

using nlohmann::json;

// ---------------------------------------------------------------------------
// Interchange formats. A polynomial is a list of terms
//   { "coeff": [re_num, re_den, im_num, im_den] as decimal strings,
//     "z": [n exponents], "w": [n exponents] }
// with "w" omitted when all its exponents vanish; the empty list is the zero
// polynomial. A rational function is { "num": Poly, "den": Poly }. A morphism
// is { "n", "m", "r", "columns": [[entry per row] per column],
// "degrees": [d_1 >= ... >= d_m] }. A graded element is a list of
//   { "form": [...], "ext": [...], "sym": [...], "detq": bool,
//     "qslot": "" | "eps<j>" | "eps<l>*" | "eps<j> eps<l>*", "coeff": RF }
// with 1-based index lists. Parsers throw std::invalid_argument on malformed
// documents.
// ---------------------------------------------------------------------------

json coeff_to_json(const GaussianRational& c);
GaussianRational coeff_from_json(const json& j);

json poly_to_json(const Poly& p);
Poly poly_from_json(const json& j, int nv);

json rf_to_json(const RationalFunction& f);
RationalFunction rf_from_json(const json& j, int nv);

json morphism_to_json(const MorphismData& f);
MorphismData morphism_from_json(const json& j);

json column_to_json(const std::vector<Poly>& col);
std::vector<Poly> column_from_json(const json& j, int nv);

json element_to_json(const GradedElement& x);
GradedElement element_from_json(const json& j, int n, int m, int r);

// ---------------------------------------------------------------------------
// Report documents. Every report embeds the tool version and the FNV-1a hash
// of the canonical serialization of its input, so a run is reproducible from
// the document alone.
// ---------------------------------------------------------------------------

std::uint64_t fnv1a64(const std::string& bytes);
std::string input_hash_hex(const json& input);

// Shared envelope: {"tool", "version", "kind", "inputHash", "input", ...}.
json report_envelope(const std::string& kind, const json& input);

json division_report(const DivisionProblem& prob, const DivisionOutcome& out);
json nullstellensatz_report(const MorphismData& P, const NullstellensatzOutcome& out);
json sample_report_to_json(const json& input, const SampleReport& rep);
json codim_report(const MorphismData& f, std::uint64_t seed, int trials, const CodimProbe& probe);
json fuhrmann_report(const json& input, const FuhrmannResult& res);

// Re-validates an emitted division/nullstellensatz certificate by exact
// re-multiplication of the echoed problem against the embedded solution.
// Returns false (with a reason) on any mismatch; throws on malformed input.
bool revalidate_certificate(const json& report, std::string* reason);

}  // namespace gkoszul
