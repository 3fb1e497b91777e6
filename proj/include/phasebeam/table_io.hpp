#pragma once

// SweepTable serialization.
//
// CSV: header naming the axes then `S`; one row per cell in table order; every number written
// with 17 significant digits; LF line endings; no BOM.
// JSON: {"axes": [{"name", "values"}], "values": [...], "meta": {...}}; doubles are written in
// their shortest round-trip form, which reproduces the binary value exactly.

#include <array>
#include <charconv>
#include <fstream>
#include <ostream>
#include <sstream>
#include <string>
#include <system_error>

#include <json.hpp>

#include "phasebeam/algebra.hpp"
#include "phasebeam/errors.hpp"
#include "phasebeam/experiments.hpp"

namespace phasebeam {

enum class TableFormat { Csv, Json };

inline std::string format_double17(double x) {
  std::array<char, 40> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), x, std::chars_format::general, 17);
  if (res.ec != std::errc{}) throw Error(Errc::Io, "number formatting failed");
  return std::string(buf.data(), res.ptr);
}

inline std::string_view to_string(EntropyMethod m) noexcept {
  return m == EntropyMethod::Oracle ? "oracle" : "closed";
}

inline void emit_csv(const SweepTable& table, std::ostream& out) {
  table.validate();
  for (const auto& axis : table.axes) out << axis.name << ',';
  out << "S\n";
  for (std::size_t i = 0; i < table.values.size(); ++i) {
    const auto idx = table.unravel(i);
    for (std::size_t k = 0; k < idx.size(); ++k) out << format_double17(table.axes[k].values[idx[k]]) << ',';
    out << format_double17(table.values[i]) << '\n';
  }
  if (!out) throw Error(Errc::Io, "failed writing CSV");
}

inline nlohmann::json to_json(const SweepTable& table) {
  table.validate();
  nlohmann::json j;
  j["axes"] = nlohmann::json::array();
  for (const auto& axis : table.axes) j["axes"].push_back({{"name", axis.name}, {"values", axis.values}});
  j["values"] = table.values;
  auto& meta = j["meta"];
  meta["family"] = std::string(to_string(table.meta.family));
  meta["kappa"] = table.meta.kappa ? nlohmann::json(*table.meta.kappa) : nlohmann::json(nullptr);
  meta["two_s"] = table.meta.two_s;
  meta["m"] = table.meta.m;
  meta["method"] = std::string(to_string(table.meta.method));
  meta["fixed"] = nlohmann::json::object();
  for (const auto& [k, v] : table.meta.fixed) meta["fixed"][k] = v;
  return j;
}

inline void emit_json(const SweepTable& table, std::ostream& out) {
  out << to_json(table).dump(2) << '\n';
  if (!out) throw Error(Errc::Io, "failed writing JSON");
}

inline void emit(const SweepTable& table, TableFormat format, std::ostream& out) {
  format == TableFormat::Csv ? emit_csv(table, out) : emit_json(table, out);
}

inline SweepTable table_from_json(const nlohmann::json& j) {
  SweepTable t;
  try {
    for (const auto& a : j.at("axes")) t.axes.push_back({a.at("name").get<std::string>(), a.at("values").get<std::vector<double>>()});
    t.values = j.at("values").get<std::vector<double>>();
    const auto& meta = j.at("meta");
    const auto fam = family_from_string(meta.at("family").get<std::string>());
    if (!fam) throw Error(Errc::Io, "unknown family in table meta");
    t.meta.family = *fam;
    if (!meta.at("kappa").is_null()) t.meta.kappa = meta.at("kappa").get<double>();
    t.meta.two_s = meta.at("two_s").get<std::vector<int>>();
    t.meta.m = meta.at("m").get<long>();
    t.meta.method = meta.at("method").get<std::string>() == "closed" ? EntropyMethod::ClosedForm
                                                                       : EntropyMethod::Oracle;
    for (const auto& [k, v] : meta.at("fixed").items()) t.meta.fixed.emplace_back(k, v.get<double>());
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::Io, std::string("malformed table JSON: ") + e.what());
  }
  t.validate();
  return t;
}

}  // namespace phasebeam
