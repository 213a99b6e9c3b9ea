#pragma once

#include "nevlab/bound.hpp"
#include "nevlab/characteristic.hpp"
#include "nevlab/curve.hpp"
#include "nevlab/lemmas.hpp"
#include "nevlab/locus.hpp"

#include <string>

namespace nevlab {

/// Parses a curve specification (YAML). Syntax problems throw ParseError; invariant violations
/// throw ParseError carrying the line of the offending node.
///
///     n: 1
///     sigma: 0
///     K: 0.5            # optional
///     components:
///       - type: exppoly # f_0 may be poly, exppoly or polyexp
///         P: [[0, 0], [1, 0]]
///       - type: exppoly
///         P: [[0, 0]]
///
/// Coefficients are [re, im] pairs in ascending powers; poly takes Q, polyexp takes Q and P.
HolomorphicCurve parse_curve_spec(const std::string& text);
HolomorphicCurve load_curve_spec(const std::string& path);

inline constexpr const char* kCharacteristicCsvHeader = "r,T_area,T_jensen,n_t";
inline constexpr const char* kBranchCsvHeader = "re,im,arclen,density";

std::string characteristic_csv(const CharacteristicTable& table);
std::string characteristic_json(const CharacteristicTable& table);
std::string branch_csv(const LocusBranch& branch);
std::string locus_json(const LocusSummary& locus);
std::string harness_json(const HarnessReport& report, std::uint64_t seed, int count);
std::string bound_report_json(const BoundReport& report);
std::string bound_report_summary(const BoundReport& report);

} // namespace nevlab
