#pragma once

#include <string>

#include <json.hpp>

#include "anosovkit/grpcoh.hpp"
#include "anosovkit/homalg.hpp"
#include "anosovkit/ideals.hpp"
#include "anosovkit/smallness.hpp"

namespace anosovkit {

/// Insertion-ordered so payloads serialize byte-identically run to run.
using Json = nlohmann::ordered_json;

Json weyl_info_json(const WeylGroup& w);
Json flag_configuration_json(const FlagConfiguration& fc);
Json ideal_json(const FlagConfiguration& fc, const BalancedIdeal& b);
Json enumeration_json(const FlagConfiguration& fc, const EnumerationResult& r);
std::string ideals_csv(const FlagConfiguration& fc, const EnumerationResult& r);
Json profile_json(const ThickeningProfile& p);

Json hdim_json(const HdimBound& h);
Json verdict_json(const SmallnessVerdict& v);
Json length_report_json(const LengthBoundReport& r);
Json sweep_row_json(const SweepRow& r);
Json moduli_json(const ModuliDimensions& m);

/// Row-major list of canonical rational strings.
Json matrix_json(const Matrix& m);
Matrix matrix_from_json(const Json& j, std::size_t rows, std::size_t cols);
/// Nested [[...], ...] rows of rational strings (or integers).
Json matrix_rows_json(const Matrix& m);
Matrix matrix_from_rows_json(const Json& j);

Json double_complex_json(const DoubleComplex& dc);
/// Throws ParseError on malformed structure and ValidationError on bad shapes.
DoubleComplex double_complex_from_json(const Json& j);
Json validation_json(const ValidationReport& r);
Json page_json(const SpectralPage& p);
Json ldt_json(const LdtSequence& s);

Json presentation_json(const GroupPresentation& p);
Json representation_json(const MatrixRep& r);
/// {"dimension": d, "matrices": [[["a/b", ...], ...], ...]}
MatrixRep representation_from_json(const Json& j);
Json cohomology_json(const CohomologyDims& c);

/// 64-bit FNV-1a of the text, as 16 hex digits.
std::string fnv1a_hex(std::string_view text);

}  // namespace anosovkit
