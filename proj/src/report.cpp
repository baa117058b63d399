#include "endoscopy/report.hpp"

#include <sstream>

namespace endo {

namespace {

double approx_of(const Rational& r) {
  return static_cast<double>(r.convert_to<double>());
}

void flatten(const nlohmann::json& node, const std::string& path,
             std::ostringstream& out) {
  if (node.is_object()) {
    for (auto it = node.begin(); it != node.end(); ++it)
      flatten(it.value(), path.empty() ? it.key() : path + "." + it.key(),
              out);
  } else if (node.is_array()) {
    size_t i = 0;
    for (const auto& item : node)
      flatten(item, path + "[" + std::to_string(i++) + "]", out);
  } else {
    std::string v = node.is_string() ? node.get<std::string>() : node.dump();
    // Keep the CSV unambiguous: quote values containing separators.
    if (v.find(',') != std::string::npos || v.find('"') != std::string::npos) {
      std::string quoted = "\"";
      for (char c : v) {
        if (c == '"') quoted += '"';
        quoted += c;
      }
      quoted += '"';
      v = quoted;
    }
    out << path << "," << v << "\n";
  }
}

}  // namespace

nlohmann::json num_json(const Rational& r) {
  return {{"exact", to_string(r)}, {"approx", approx_of(r)}};
}

nlohmann::json num_json(const Cyclo& z) {
  std::complex<double> a = z.approx();
  return {{"exact", z.to_string()},
          {"approx", {a.real(), a.imag()}}};
}

nlohmann::json num_json(const TransferValue& v) {
  double a = approx_of(v.mag);
  if (v.half) a *= std::sqrt(static_cast<double>(v.q));
  std::complex<double> phase(1, 0);
  for (int i = 0; i < v.phase.e; ++i) phase *= std::complex<double>(0, 1);
  std::complex<double> z = phase * a;
  return {{"exact", v.to_string()}, {"approx", {z.real(), z.imag()}}};
}

nlohmann::json elem_json(const ExtElem& t) {
  return {{"a", t.a.to_string()}, {"b", t.b.to_string()}};
}

nlohmann::json orbital_json(const OrbitalReport& rep) {
  nlohmann::json cells = nlohmann::json::array();
  for (const OrbitalCell& c : rep.cells)
    cells.push_back({{"m", c.m},
                     {"C", num_json(c.C)},
                     {"sign", c.sign},
                     {"f", num_json(c.f)}});
  return {{"value", num_json(rep.value)},
          {"normalization", rep.normalization},
          {"cells", cells}};
}

nlohmann::json transfer_json(const TransferTable& table) {
  nlohmann::json pts = nlohmann::json::array();
  for (const TransferPoint& pt : table.points)
    pts.push_back({{"t", elem_json(pt.t)},
                   {"vb", pt.vb},
                   {"value", num_json(pt.value)}});
  return {{"ext", table.E->describe()},
          {"level", table.level},
          {"norm", table.norm == AbsNorm::Base ? "base" : "ext"},
          {"smooth_level", table.smooth_level},
          {"points", pts}};
}

nlohmann::json fl_json(const FlReport& rep) {
  nlohmann::json rows = nlohmann::json::array();
  for (const FlRow& row : rep.rows)
    rows.push_back({{"n", row.n},
                    {"value", num_json(row.value)},
                    {"pass", row.pass}});
  nlohmann::json out = {{"applicable", rep.applicable},
                        {"fl_pass", rep.applicable && rep.pass},
                        {"rows", rows}};
  if (!rep.reason.empty()) out["reason"] = rep.reason;
  return out;
}

nlohmann::json germ_json(const GermProfile& profile) {
  nlohmann::json rows = nlohmann::json::array();
  for (const GermRow& row : profile.rows)
    rows.push_back({{"n", row.n},
                    {"t", elem_json(row.t)},
                    {"stable", num_json(row.stable)},
                    {"twisted", num_json(row.twisted)},
                    {"transfer_value", num_json(row.transfer_value)}});
  nlohmann::json out = {{"ext", profile.E->describe()},
                        {"rows", rows},
                        {"n0", profile.n0},
                        {"limit", num_json(profile.limit)},
                        {"fit_ok", profile.fit_ok}};
  if (profile.fit_ok) {
    out["fit_c1"] = num_json(profile.fit_c1);
    out["fit_c2"] = num_json(profile.fit_c2);
  }
  return out;
}

nlohmann::json shalika_json(const ShalikaReport& rep) {
  if (rep.refused) return {{"refused", true}, {"reason", rep.reason}};
  nlohmann::json kappa = nlohmann::json::array();
  for (const Rational& v : rep.kappa_values) kappa.push_back(num_json(v));
  nlohmann::json inv = nlohmann::json::array();
  for (const Rational& v : rep.inverted) inv.push_back(num_json(v));
  nlohmann::json dir = nlohmann::json::array();
  for (const Rational& v : rep.direct) dir.push_back(num_json(v));
  return {{"refused", false},
          {"classes", rep.classes},
          {"kappa_values", kappa},
          {"inverted", inv},
          {"direct", dir},
          {"pass", rep.pass}};
}

nlohmann::json char_json(const TorusChar& theta) {
  return {{"twist", theta.twist},
          {"order", theta.order},
          {"gen_orders", theta.G->gen_orders()},
          {"level", theta.G->level()}};
}

nlohmann::json char_identity_json(const CharIdentityReport& rep) {
  return {{"lhs", num_json(rep.lhs)},
          {"rhs", num_json(rep.rhs)},
          {"pass", rep.pass}};
}

nlohmann::json weyl_json(const WeylReport& rep) {
  std::string status = rep.status == WeylReport::Status::Pass ? "pass"
                       : rep.status == WeylReport::Status::Fail
                           ? "fail"
                           : "inconclusive";
  nlohmann::json out = {{"status", status},
                        {"lhs", num_json(rep.lhs)},
                        {"rhs", num_json(rep.rhs)},
                        {"w_T", rep.w_T}};
  if (!rep.note.empty()) out["note"] = rep.note;
  return out;
}

nlohmann::json wrap_report(const RunConfig& config, nlohmann::json body) {
  nlohmann::json out;
  out["config"] = config.entries;
  out["report"] = std::move(body);
  return out;
}

std::string to_csv(const nlohmann::json& doc) {
  std::ostringstream out;
  out << "path,value\n";
  flatten(doc, "", out);
  return out.str();
}

std::string render_report(const RunConfig& config, nlohmann::json body) {
  nlohmann::json doc = wrap_report(config, std::move(body));
  if (config.get("format", "json") == "csv") return to_csv(doc);
  return doc.dump(2) + "\n";
}

}  // namespace endo
