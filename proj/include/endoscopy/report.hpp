#pragma once

#include <map>
#include <string>

#include <json.hpp>

#include "endoscopy/germs.hpp"
#include "endoscopy/spectral.hpp"
#include "endoscopy/torus_chars.hpp"
#include "endoscopy/transfer.hpp"

namespace endo {

// The full parameter set of one run; every emitted report embeds it, and
// identical configurations produce byte-identical reports.
struct RunConfig {
  std::map<std::string, std::string> entries;

  bool has(const std::string& key) const { return entries.count(key) != 0; }
  std::string get(const std::string& key, const std::string& dflt = "") const {
    auto it = entries.find(key);
    return it == entries.end() ? dflt : it->second;
  }
};

// Exact numeric rendering: {"exact": "<string>", "approx": <double>}; the
// float field is a convenience tagged by name as approximate.
nlohmann::json num_json(const Rational& r);
nlohmann::json num_json(const Cyclo& z);
nlohmann::json num_json(const TransferValue& v);
nlohmann::json elem_json(const ExtElem& t);

nlohmann::json orbital_json(const OrbitalReport& rep);
nlohmann::json transfer_json(const TransferTable& table);
nlohmann::json fl_json(const FlReport& rep);
nlohmann::json germ_json(const GermProfile& profile);
nlohmann::json shalika_json(const ShalikaReport& rep);
nlohmann::json char_json(const TorusChar& theta);
nlohmann::json char_identity_json(const CharIdentityReport& rep);
nlohmann::json weyl_json(const WeylReport& rep);

// Wrap a report body with its configuration.
nlohmann::json wrap_report(const RunConfig& config, nlohmann::json body);

// Deterministic flat CSV rendering of a report: one "path,value" line per
// leaf, in document order.
std::string to_csv(const nlohmann::json& doc);

// Render per the config's "format" entry ("json" default, or "csv"),
// newline-terminated.
std::string render_report(const RunConfig& config, nlohmann::json body);

}  // namespace endo
