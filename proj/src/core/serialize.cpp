// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The waverate Authors

#include "core/serialize.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "core/io.hpp"

namespace waverate {

namespace {

bool is_scalar(const Json& j) { return !j.is_object() && !j.is_array(); }

void render(const Json& j, int indent, std::string& out) {
  const std::string pad(static_cast<std::size_t>(indent), ' ');
  const std::string inner(static_cast<std::size_t>(indent + 2), ' ');
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (const auto& [k, v] : j.items()) {
        if (!first) out += ",\n";
        first = false;
        out += inner + Json(k).dump() + ": ";
        render(v, indent + 2, out);
      }
      out += "\n" + pad + "}";
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      const bool flat = std::all_of(j.begin(), j.end(), is_scalar);
      if (flat) {
        out += "[";
        for (std::size_t i = 0; i < j.size(); ++i) {
          if (i) out += ", ";
          render(j[i], indent, out);
        }
        out += "]";
        return;
      }
      out += "[\n";
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) out += ",\n";
        out += inner;
        render(j[i], indent + 2, out);
      }
      out += "\n" + pad + "]";
      return;
    }
    case Json::value_t::number_float: {
      const double v = j.get<double>();
      out += std::isfinite(v) ? format_double(v) : "null";
      return;
    }
    default:
      out += j.dump();
  }
}

double number_or_nan(const Json& j) { return j.is_null() ? NAN : j.get<double>(); }

std::vector<double> doubles(const Json& j) {
  std::vector<double> v;
  v.reserve(j.size());
  for (const auto& x : j) v.push_back(number_or_nan(x));
  return v;
}

DyadicGrid grid_from_json(const Json& j) {
  return DyadicGrid::over(j.at("left").get<double>(), j.at("right").get<double>(), j.at("level").get<int>());
}

SampledFunction sampled_from_json(const Json& j, DecayHint decay) {
  const DyadicGrid g = grid_from_json(j.at("grid"));
  std::vector<double> values = doubles(j.at("values"));
  std::vector<double> left;
  if (j.contains("left_values")) left = doubles(j.at("left_values"));
  if (values.size() != g.count() || (!left.empty() && left.size() != g.count()))
    throw ConfigError("sample count does not match the grid");
  return SampledFunction(g, std::move(values), decay, std::move(left));
}

std::string cell_or_diverged(const IntegralResult& r) { return r.diverged ? "DIVERGED" : format_double(r.value); }

}  // namespace

std::string render_json(const Json& doc) {
  std::string out;
  render(doc, 0, out);
  out += '\n';
  return out;
}

Json parse_json(std::string_view text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("malformed JSON: ") + e.what());
  }
}

Json to_json(const DyadicGrid& g) { return Json{{"left", g.left}, {"right", g.right}, {"level", g.level}}; }

Json to_json(const SampledFunction& f) {
  Json j{{"grid", to_json(f.grid())}};
  j["values"] = std::vector<double>(f.values().begin(), f.values().end());
  if (f.has_jumps()) j["left_values"] = std::vector<double>(f.left_limits().begin(), f.left_limits().end());
  return j;
}

Json to_json(const InvariantReport& r) {
  return Json{{"phi_integral_defect", r.phi_integral_defect},
              {"psi_integral_defect", r.psi_integral_defect},
              {"partition_defect", r.partition_defect},
              {"orthonormality_defect", r.orthonormality_defect},
              {"integral_tolerance", r.integral_tolerance},
              {"partition_tolerance", r.partition_tolerance},
              {"orthonormality_tolerance", r.orthonormality_tolerance},
              {"passed", r.passed()}};
}

Json to_json(const RateReport& r) {
  return Json{{"family", r.family},
              {"function", r.function},
              {"window", {r.window.left, r.window.right}},
              {"j_values", r.js},
              {"sup_errors", r.sup_errors},
              {"quantization", r.quantization},
              {"slope", r.slope},
              {"intercept", r.intercept},
              {"r_squared", r.r_squared}};
}

Json to_json(const RadialBound& r) {
  return Json{{"C", r.constant},
              {"l1_mass", r.l1_mass},
              {"tail", r.tail},
              {"tail_fraction", r.tail_fraction},
              {"tail_model", r.tail_model},
              {"tail_exponent", r.tail_exponent},
              {"finite", r.finite()}};
}

Json to_json(const DecayFit& f) {
  Json j{{"model", f.model == DecayModel::exponential ? "exponential" : "algebraic"}, {"C", f.constant}};
  j[f.model == DecayModel::exponential ? "a" : "N"] = f.rate;
  j["r2"] = f.r_squared;
  j["points"] = f.points;
  j["u_range"] = {f.u_lo, f.u_hi};
  j["flagged"] = f.flagged;
  return j;
}

Json to_json(const IntegralResult& r) {
  Json trace = Json::array();
  for (const auto& [m, v] : r.refinement_trace) trace.push_back({m, v});
  return Json{{"s", r.s},
              {"epsilon", r.epsilon},
              {"value", r.diverged ? Json("DIVERGED") : Json(r.value)},
              {"abs_value", r.abs_value},
              {"diverged", r.diverged},
              {"negative_fraction", r.negative_fraction},
              {"refinement_trace", trace}};
}

Json to_json(const CriticalOrder& c) {
  Json verdicts = Json::array();
  for (const auto& [s, d] : c.verdicts) verdicts.push_back({{"s", s}, {"diverged", d}});
  return Json{{"family", c.family},
              {"criterion", to_string(c.kind)},
              {"epsilon", c.epsilon},
              {"s_star", c.s_star},
              {"bracket", {c.bracket_lo, c.bracket_hi}},
              {"above_range", c.above_range},
              {"below_range", c.below_range},
              {"verdicts", verdicts}};
}

Json to_json(const RobustnessReport& r) {
  return Json{{"schedules", r.schedules},
              {"fractions", r.fractions},
              {"dispersion", r.dispersion},
              {"final_difference", r.final_difference},
              {"agreed", r.agreed}};
}

std::string family_to_json(const MRAFamily& fam) {
  Json j{{"name", fam.name}, {"params", Json::array({fam.param})}, {"level", fam.level}};
  j["vanishing_moments"] = fam.vanishing_moments;
  j["decay"] = Json{{"kind", to_string(fam.decay_class.kind)}, {"rate", fam.decay_class.rate}};
  const Json phi = to_json(fam.phi);
  for (const auto& [k, v] : phi.items()) j[k] = v;
  j["psi"] = to_json(fam.psi);
  if (fam.filter) {
    j["filter"] = Json{{"lowpass", fam.filter->lowpass}, {"offset", fam.filter->offset}};
  } else {
    j["filter"] = nullptr;
  }
  return render_json(j);
}

MRAFamily family_from_json(std::string_view text) {
  const Json j = parse_json(text);
  MRAFamily fam;
  try {
    fam.name = j.at("name").get<std::string>();
    fam.kind = family_kind_from_string(fam.name);
    const Json& params = j.at("params");
    fam.param = params.empty() ? 0 : params.at(0).get<int>();
    fam.level = j.at("level").get<int>();
    fam.vanishing_moments = j.at("vanishing_moments").get<int>();
    fam.decay_class = DecayHint{decay_kind_from_string(j.at("decay").at("kind").get<std::string>()),
                                j.at("decay").at("rate").get<double>()};
    fam.phi = sampled_from_json(j, fam.decay_class);
    fam.psi = sampled_from_json(j.at("psi"), fam.decay_class);
    if (!j.at("filter").is_null()) {
      const Json& f = j.at("filter");
      fam.filter = FilterPair::from_lowpass(doubles(f.at("lowpass")), f.at("offset").get<long>());
    }
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("malformed family document: ") + e.what());
  }
  if (!check_invariants(fam).passed()) throw ComputeError("family document fails the multiresolution invariants");
  return fam;
}

std::string coefficients_to_json(const ExpansionCoefficients& c) {
  Json b = Json::object(), a = Json::object();
  for (const auto& [k, v] : c.b) b[std::to_string(k)] = v;
  for (const auto& [jk, v] : c.a) a[std::to_string(jk.first) + "," + std::to_string(jk.second)] = v;
  return render_json(Json{{"family", c.family},
                          {"j0", c.j0},
                          {"j1", c.j1},
                          {"window", {c.window.left, c.window.right}},
                          {"b", b},
                          {"a", a}});
}

ExpansionCoefficients coefficients_from_json(std::string_view text) {
  const Json j = parse_json(text);
  ExpansionCoefficients c;
  try {
    c.family = j.value("family", std::string());
    c.j0 = j.at("j0").get<int>();
    c.j1 = j.at("j1").get<int>();
    if (j.contains("window")) c.window = Window{j["window"].at(0).get<double>(), j["window"].at(1).get<double>()};
    for (const auto& [k, v] : j.at("b").items()) c.b[std::stol(k)] = v.get<double>();
    for (const auto& [k, v] : j.at("a").items()) {
      const auto comma = k.find(',');
      if (comma == std::string::npos) throw ConfigError("wavelet coefficient key must read \"j,k\"");
      c.a[{std::stoi(k.substr(0, comma)), std::stol(k.substr(comma + 1))}] = v.get<double>();
    }
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("malformed coefficient document: ") + e.what());
  } catch (const std::logic_error& e) {
    if (dynamic_cast<const ConfigError*>(&e)) throw;
    throw ConfigError(std::string("malformed coefficient key: ") + e.what());
  }
  return c;
}

std::string bound_report_to_json(const std::string& family, const BoundReport& rep,
                                 const std::optional<DecayFit>& fit) {
  Json j{{"family", family}, {"j_values", rep.js}};
  const Json env = to_json(rep.envelope);
  for (const auto& [k, v] : env.items()) j[k] = v;
  if (fit) {
    j[fit->model == DecayModel::exponential ? "a" : "N"] = fit->rate;
    j["r2"] = fit->r_squared;
    j["fit"] = to_json(*fit);
  }
  j["collapse_defect"] = rep.collapse_defect;
  j["passed"] = rep.passed;
  return render_json(j);
}

std::string rate_report_to_csv(const RateReport& r) {
  CsvTable t({"family", "function", "j", "sup_error", "quantization"});
  for (std::size_t i = 0; i < r.js.size(); ++i)
    t.row({r.family, r.function, std::to_string(r.js[i]), format_double(r.sup_errors[i]),
           format_double(r.quantization[i])});
  return t.str();
}

std::string kernel_to_csv(const KernelEvaluation& ke) {
  std::string out = "x,y,value\n";
  for (Eigen::Index i = 0; i < ke.values.rows(); ++i)
    for (Eigen::Index k = 0; k < ke.values.cols(); ++k) {
      out += format_double(ke.xs.at(static_cast<std::size_t>(i)));
      out += ',';
      out += format_double(ke.ys.at(static_cast<std::size_t>(k)));
      out += ',';
      out += format_double(ke.values(i, k));
      out += '\n';
    }
  return out;
}

std::string bound_profiles_to_csv(const BoundReport& rep) {
  CsvTable t({"j", "u", "M"});
  for (std::size_t p = 0; p < rep.profiles.size(); ++p)
    for (std::size_t i = 0; i < rep.profiles[p].radii.size(); ++i)
      t.row({std::to_string(rep.js[p]), format_double(rep.profiles[p].radii[i]),
             format_double(rep.profiles[p].majorant[i])});
  for (std::size_t i = 0; i < rep.envelope.radii.size(); ++i)
    t.row({"envelope", format_double(rep.envelope.radii[i]), format_double(rep.envelope.majorant[i])});
  return t.str();
}

std::string sobolev_sweep_to_csv(const std::vector<SweepRow>& rows) {
  CsvTable t({"s", "epsilon", "wavelet", "scaling", "wavelet_shells"});
  for (const SweepRow& r : rows) {
    std::string shells;
    for (std::size_t i = 0; i < r.wavelet.shell_sums.size(); ++i) {
      if (i) shells += ';';
      shells += format_double(r.wavelet.shell_sums[i]);
    }
    t.row({format_double(r.s), format_double(r.epsilon), cell_or_diverged(r.wavelet), cell_or_diverged(r.scaling),
           shells});
  }
  return t.str();
}

std::string trace_to_csv(const std::string& family, const std::string& function, const MarkedPoint& point,
                         const std::vector<TracePoint>& trace) {
  CsvTable t({"family", "function", "kind", "x", "reference", "j", "value"});
  for (const TracePoint& p : trace)
    t.row({family, function, to_string(point.kind), format_double(point.x), format_double(point.reference),
           std::to_string(p.j), format_double(p.value)});
  return t.str();
}

std::string lp_trace_to_csv(const std::string& family, const std::string& function, double p,
                            const std::vector<TracePoint>& trace) {
  CsvTable t({"family", "function", "p", "j", "error"});
  for (const TracePoint& e : trace)
    t.row({family, function, format_double(p), std::to_string(e.j), format_double(e.value)});
  return t.str();
}

std::string spline_to_csv(const SplineApproximation& s) {
  CsvTable t({"index", "knot", "coefficient"});
  const SplineSpace& sp = s.space;
  for (long i = 0; i < sp.basis_count; ++i)
    t.row({std::to_string(i), format_double(sp.window.left + static_cast<double>(i - sp.order + 1) * sp.mesh),
           format_double(s.coefficients(i))});
  return t.str();
}

}  // namespace waverate
