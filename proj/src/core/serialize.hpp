// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The waverate Authors

#pragma once

#include <json.hpp>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "core/convergence.hpp"
#include "core/kernel.hpp"
#include "core/sobolev.hpp"
#include "core/spline.hpp"

namespace waverate {

using Json = nlohmann::ordered_json;

/// Two-space indented JSON; floats with 17 significant digits, non-finite as null.
std::string render_json(const Json& doc);
Json parse_json(std::string_view text);

Json to_json(const DyadicGrid& g);
Json to_json(const SampledFunction& f);
Json to_json(const InvariantReport& r);
Json to_json(const RateReport& r);
Json to_json(const RadialBound& r);
Json to_json(const DecayFit& f);
Json to_json(const IntegralResult& r);
Json to_json(const CriticalOrder& c);
Json to_json(const RobustnessReport& r);

std::string family_to_json(const MRAFamily& fam);
/// Rebuilds a family bit for bit and re-checks its invariants.
MRAFamily family_from_json(std::string_view text);

std::string coefficients_to_json(const ExpansionCoefficients& c);
ExpansionCoefficients coefficients_from_json(std::string_view text);

std::string bound_report_to_json(const std::string& family, const BoundReport& rep,
                                 const std::optional<DecayFit>& fit);

std::string rate_report_to_csv(const RateReport& r);
/// Columns x, y, value.
std::string kernel_to_csv(const KernelEvaluation& ke);
/// Columns j, u, M with the envelope listed as j = "envelope".
std::string bound_profiles_to_csv(const BoundReport& rep);

struct SweepRow {
  double s = 0.0;
  double epsilon = 0.0;
  IntegralResult wavelet;
  IntegralResult scaling;
};

/// Columns s, epsilon, wavelet, scaling (value or DIVERGED), wavelet_shells (';'-separated).
std::string sobolev_sweep_to_csv(const std::vector<SweepRow>& rows);

/// Columns family, function, kind, x, reference, j, value.
std::string trace_to_csv(const std::string& family, const std::string& function, const MarkedPoint& point,
                         const std::vector<TracePoint>& trace);
/// Columns family, function, p, j, error.
std::string lp_trace_to_csv(const std::string& family, const std::string& function, double p,
                            const std::vector<TracePoint>& trace);
/// Columns index, knot, coefficient (knot = left end of the basis support).
std::string spline_to_csv(const SplineApproximation& s);

}  // namespace waverate
