// Command-line surface: parameter parsing, sweeps, JSON/CSV reports, and
// the bundled verification suite.
//
// Exit codes: 0 pass, 1 identity failure, 2 usage error, 3 inconclusive.
#include <CLI11.hpp>

#include <cstdint>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <sstream>

#include "endoscopy/acceptance.hpp"
#include "endoscopy/field_spec.hpp"
#include "endoscopy/oracle.hpp"
#include "endoscopy/report.hpp"
#include "endoscopy/spectral.hpp"

using namespace endo;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;
constexpr int kExitInconclusive = 3;

TestFunction parse_cells(const std::string& spec) {
  TestFunction f;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    size_t colon = item.find(':');
    int r = std::stoi(item.substr(0, colon));
    Rational coeff = 1;
    if (colon != std::string::npos) coeff = Rational(item.substr(colon + 1));
    if (r < 0) throw CLI::ValidationError("--cells", "cell depth must be >= 0");
    f.cells.emplace_back(r, coeff);
  }
  if (f.cells.empty()) f = TestFunction::unit();
  return f;
}

struct Common {
  std::string field = "Qp:p=3,prec=14";
  std::string ext = "unramified";
  std::string cells = "0";
  std::string format = "json";
  std::uint64_t seed = 0;
  std::string config_file;
  CLI::App* sub = nullptr;
  std::map<std::string, std::function<void(const std::string&)>> setters;

  void attach(CLI::App* s, bool with_ext = true, bool with_cells = false) {
    sub = s;
    sub->add_option("--field", field, "field spec, Qp:p=..,prec=.. or "
                    "Fq:p=..,f=..,prec=..[,modulus=..]");
    setters["field"] = [this](const std::string& v) { field = v; };
    if (with_ext) {
      sub->add_option("--ext", ext, "extension spec: ext:t=..,d=.. or "
                      "split|unramified|ramified|ramified2");
      setters["ext"] = [this](const std::string& v) { ext = v; };
    }
    if (with_cells) {
      sub->add_option("--cells", cells,
                      "test function: comma list of r[:coeff]");
      setters["cells"] = [this](const std::string& v) { cells = v; };
    }
    sub->add_option("--format", format, "output format")
        ->check(CLI::IsMember({"json", "csv"}));
    setters["format"] = [this](const std::string& v) {
      if (v != "json" && v != "csv")
        throw CLI::ValidationError("--config", "format must be json or csv");
      format = v;
    };
    sub->add_option("--seed", seed, "seed for sampled checks");
    setters["seed"] = [this](const std::string& v) { seed = std::stoull(v); };
    sub->add_option("--config", config_file,
                    "key=value configuration file; flags override");
  }

  // Apply the config file to every option not already given on the command
  // line (flags override the file).
  void load_config() {
    if (config_file.empty()) return;
    std::ifstream in(config_file);
    if (!in)
      throw CLI::ValidationError("--config",
                                 "cannot open " + config_file);
    std::string line;
    auto trim = [](std::string s) {
      size_t a = s.find_first_not_of(" \t\r");
      size_t b = s.find_last_not_of(" \t\r");
      return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
    };
    while (std::getline(in, line)) {
      std::string t = trim(line);
      if (t.empty() || t[0] == '#' || t[0] == '[') continue;
      size_t eq = t.find('=');
      if (eq == std::string::npos)
        throw CLI::ValidationError("--config", "expected key=value: " + t);
      std::string key = trim(t.substr(0, eq));
      std::string value = trim(t.substr(eq + 1));
      if (value.size() >= 2 && value.front() == '"' && value.back() == '"')
        value = value.substr(1, value.size() - 2);
      auto it = setters.find(key);
      if (it == setters.end())
        throw CLI::ValidationError("--config", "unknown key: " + key);
      if (sub->count("--" + key) > 0) continue;
      it->second(value);
    }
  }

  RunConfig config(const std::string& command, bool with_ext = true,
                   bool with_cells = false) const {
    RunConfig c;
    c.entries["command"] = command;
    c.entries["field"] = field;
    if (with_ext) c.entries["ext"] = ext;
    if (with_cells) c.entries["cells"] = cells;
    c.entries["format"] = format;
    c.entries["seed"] = std::to_string(seed);
    return c;
  }
};

int emit(const RunConfig& config, nlohmann::json body, int code) {
  std::cout << render_report(config, std::move(body));
  return code;
}

// The canonical norm-one point at depth parameter j.
ExtElem canonical_point(const ExtPtr& E, int j) {
  const FieldPtr& F = E->base();
  return norm_one_from(ext_add(
      ext_one(E),
      ext_elem(E, LocalElem::zero(F), LocalElem::uniformizer(F).pow(j))));
}

ExtElem resolve_point(const ExtPtr& E, const std::string& a,
                      const std::string& b, int depth) {
  if (a.empty() != b.empty())
    throw CLI::ValidationError("--a/--b", "give both coordinates or neither");
  if (!a.empty()) {
    ExtElem t = ext_elem(E, parse_elem(E->base(), a), parse_elem(E->base(), b));
    LocalElem n = ext_norm(t);
    if (!equals(n, LocalElem::from_int(E->base(), 1)))
      throw CLI::ValidationError("--a/--b", "point is not norm-one");
    return t;
  }
  return canonical_point(E, depth);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact local orbital integrals, endoscopic transfer and "
               "spectral identities for SL(2)"};
  app.require_subcommand(1);

  Common c_classify, c_eps, c_lambda, c_orb, c_korb, c_transfer, c_fl,
      c_germ, c_shalika, c_charid, c_orth, c_weyl, c_oracle, c_verify;

  auto* classify = app.add_subcommand("classify-ext",
                                      "classify a quadratic extension");
  c_classify.attach(classify);

  auto* eps = app.add_subcommand("epsilon", "quadratic character value");
  std::string eps_x = "pi";
  c_eps.attach(eps);
  eps->add_option("--x", eps_x, "element expression");
  c_eps.setters["x"] = [&](const std::string& v) { eps_x = v; };

  auto* lambda = app.add_subcommand("lambda", "normalizing constant");
  c_lambda.attach(lambda);

  auto* orb = app.add_subcommand("orbital", "stable orbital integral");
  std::string orb_a, orb_b;
  int orb_depth = 1;
  c_orb.attach(orb, true, true);
  orb->add_option("--a", orb_a, "a-coordinate of t = a + b*tau");
  orb->add_option("--b", orb_b, "b-coordinate of t = a + b*tau");
  orb->add_option("--depth", orb_depth, "canonical point depth parameter");
  c_orb.setters["a"] = [&](const std::string& v) { orb_a = v; };
  c_orb.setters["b"] = [&](const std::string& v) { orb_b = v; };
  c_orb.setters["depth"] = [&](const std::string& v) { orb_depth = std::stoi(v); };

  auto* korb = app.add_subcommand("kappa-orbital",
                                  "character-twisted orbital integral");
  std::string korb_a, korb_b, korb_kappa;
  int korb_depth = 1, korb_central = 0;
  c_korb.attach(korb, true, true);
  korb->add_option("--a", korb_a, "a-coordinate of t = a + b*tau");
  korb->add_option("--b", korb_b, "b-coordinate of t = a + b*tau");
  korb->add_option("--depth", korb_depth, "canonical point depth parameter");
  korb->add_option("--kappa", korb_kappa,
                   "carrier extension of the character (default: --ext)");
  korb->add_option("--central", korb_central,
                   "unipotent integral at the central element +1 or -1")
      ->check(CLI::IsMember({-1, 1}));
  c_korb.setters["a"] = [&](const std::string& v) { korb_a = v; };
  c_korb.setters["b"] = [&](const std::string& v) { korb_b = v; };
  c_korb.setters["depth"] = [&](const std::string& v) { korb_depth = std::stoi(v); };
  c_korb.setters["kappa"] = [&](const std::string& v) { korb_kappa = v; };
  c_korb.setters["central"] = [&](const std::string& v) { korb_central = std::stoi(v); };

  auto* tr = app.add_subcommand("transfer", "tabulated transfer f -> f^E");
  int tr_level = 2;
  std::string tr_norm = "base", tr_constant = "lambda-inv";
  c_transfer.attach(tr, true, true);
  tr->add_option("--level", tr_level, "tabulation level");
  tr->add_option("--norm", tr_norm, "absolute value on b(tau - taubar)")
      ->check(CLI::IsMember({"base", "ext"}));
  tr->add_option("--constant", tr_constant, "transfer factor constant")
      ->check(CLI::IsMember({"lambda-inv", "one"}));
  c_transfer.setters["level"] = [&](const std::string& v) { tr_level = std::stoi(v); };
  c_transfer.setters["norm"] = [&](const std::string& v) { tr_norm = v; };
  c_transfer.setters["constant"] = [&](const std::string& v) { tr_constant = v; };

  auto* fl = app.add_subcommand("fl-check",
                                "fundamental lemma verification");
  int fl_depth = 4;
  c_fl.attach(fl);
  fl->add_option("--depth", fl_depth, "maximal v(b) to verify");
  c_fl.setters["depth"] = [&](const std::string& v) { fl_depth = std::stoi(v); };

  auto* germ = app.add_subcommand("germ-expand",
                                  "orbital profile along t_n -> 1");
  int germ_nmax = 4;
  c_germ.attach(germ, true, true);
  germ->add_option("--n-max", germ_nmax, "maximal depth");
  c_germ.setters["n-max"] = [&](const std::string& v) { germ_nmax = std::stoi(v); };

  auto* shal = app.add_subcommand("shalika-compare",
                                  "square-class Fourier inversion");
  c_shalika.attach(shal, false, true);

  auto* charid = app.add_subcommand("char-identity",
                                    "pointwise character identity sweep");
  int charid_level = 1, charid_samples = 20;
  c_charid.attach(charid);
  charid->add_option("--level", charid_level, "character level");
  charid->add_option("--samples", charid_samples, "regular points per theta");
  c_charid.setters["level"] = [&](const std::string& v) { charid_level = std::stoi(v); };
  c_charid.setters["samples"] = [&](const std::string& v) { charid_samples = std::stoi(v); };

  auto* orth = app.add_subcommand("orthogonality",
                                  "character orthogonality integrals");
  int orth_level = 1;
  c_orth.attach(orth);
  orth->add_option("--level", orth_level, "character level");
  c_orth.setters["level"] = [&](const std::string& v) { orth_level = std::stoi(v); };

  auto* weyl = app.add_subcommand("weyl-check",
                                  "spectral Weyl-integration identity");
  int weyl_level = 1;
  c_weyl.attach(weyl, true, true);
  weyl->add_option("--level", weyl_level, "character level");
  c_weyl.setters["level"] = [&](const std::string& v) { weyl_level = std::stoi(v); };

  auto* orc = app.add_subcommand("oracle", "brute-force audit backends");
  std::string orc_op = "unit-quotient", orc_x = "pi";
  int orc_m = 1, orc_level = 2;
  c_oracle.attach(orc);
  orc->add_option("--op", orc_op, "oracle operation")
      ->check(CLI::IsMember({"unit-quotient", "norm", "square-classes"}));
  orc->add_option("--m", orc_m, "quotient depth (unit-quotient)");
  orc->add_option("--x", orc_x, "element expression (norm)");
  orc->add_option("--level", orc_level, "enumeration level");
  c_oracle.setters["op"] = [&](const std::string& v) { orc_op = v; };
  c_oracle.setters["m"] = [&](const std::string& v) { orc_m = std::stoi(v); };
  c_oracle.setters["x"] = [&](const std::string& v) { orc_x = v; };
  c_oracle.setters["level"] = [&](const std::string& v) { orc_level = std::stoi(v); };

  auto* verify = app.add_subcommand("verify-all",
                                    "run the bundled verification suite");
  bool verify_quick = false;
  c_verify.attach(verify, false, false);
  verify->add_flag("--quick", verify_quick, "lower the sample counts");
  c_verify.setters["quick"] = [&](const std::string& v) { verify_quick = v == "true" || v == "1"; };

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (app.got_subcommand(classify)) {
      c_classify.load_config();
      FieldPtr F = parse_field(c_classify.field);
      ExtPtr E = parse_ext(F, c_classify.ext);
      RunConfig config = c_classify.config("classify-ext");
      return emit(config,
                  {{"kind", kind_name(E->kind())},
                   {"ext", E->describe()},
                   {"ramification_index", E->e()},
                   {"residue_degree", E->resdeg()},
                   {"disc_valuation", E->tau_diff_val2()},
                   {"epsilon_minus1", E->epsilon_minus1()}},
                  kExitPass);
    }

    if (app.got_subcommand(eps)) {
      c_eps.load_config();
      FieldPtr F = parse_field(c_eps.field);
      ExtPtr E = parse_ext(F, c_eps.ext);
      LocalElem x = parse_elem(F, eps_x);
      RunConfig config = c_eps.config("epsilon");
      config.entries["x"] = eps_x;
      return emit(config,
                  {{"x", x.to_string()}, {"value", E->epsilon(x)}},
                  kExitPass);
    }

    if (app.got_subcommand(lambda)) {
      c_lambda.load_config();
      FieldPtr F = parse_field(c_lambda.field);
      ExtPtr E = parse_ext(F, c_lambda.ext);
      LambdaInfo lam = lambda_const(E);
      bool square_ok =
          lam.value * lam.value == Quartic::from_sign(E->epsilon_minus1());
      RunConfig config = c_lambda.config("lambda");
      return emit(config,
                  {{"lambda", lam.value.to_string()},
                   {"canonical", lam.canonical},
                   {"square_is_epsilon_minus1", square_ok}},
                  square_ok ? kExitPass : kExitFail);
    }

    if (app.got_subcommand(orb)) {
      c_orb.load_config();
      FieldPtr F = parse_field(c_orb.field);
      ExtPtr E = parse_ext(F, c_orb.ext);
      TestFunction f = parse_cells(c_orb.cells);
      ExtElem t = resolve_point(E, orb_a, orb_b, orb_depth);
      RunConfig config = c_orb.config("orbital", true, true);
      config.entries["depth"] = std::to_string(orb_depth);
      return emit(config,
                  {{"t", elem_json(t)}, {"orbital", orbital_json(orbital(t, f))}},
                  kExitPass);
    }

    if (app.got_subcommand(korb)) {
      c_korb.load_config();
      FieldPtr F = parse_field(c_korb.field);
      ExtPtr E = parse_ext(F, c_korb.ext);
      TestFunction f = parse_cells(c_korb.cells);
      KappaChar kappa{korb_kappa.empty() ? E : parse_ext(F, korb_kappa)};
      RunConfig config = c_korb.config("kappa-orbital", true, true);
      config.entries["kappa"] = korb_kappa.empty() ? c_korb.ext : korb_kappa;
      if (korb_central != 0) {
        config.entries["central"] = std::to_string(korb_central);
        Rational v = unipotent_kappa_orbital(F, korb_central, kappa, f);
        return emit(config, {{"central", korb_central}, {"value", num_json(v)}},
                    kExitPass);
      }
      ExtElem t = resolve_point(E, korb_a, korb_b, korb_depth);
      config.entries["depth"] = std::to_string(korb_depth);
      return emit(config,
                  {{"t", elem_json(t)},
                   {"orbital", orbital_json(orbital(t, f, kappa))}},
                  kExitPass);
    }

    if (app.got_subcommand(tr)) {
      c_transfer.load_config();
      FieldPtr F = parse_field(c_transfer.field);
      ExtPtr E = parse_ext(F, c_transfer.ext);
      TestFunction f = parse_cells(c_transfer.cells);
      RunConfig config = c_transfer.config("transfer", true, true);
      config.entries["level"] = std::to_string(tr_level);
      config.entries["norm"] = tr_norm;
      config.entries["constant"] = tr_constant;
      if (!E->is_field()) {
        nlohmann::json pts = nlohmann::json::array();
        for (const SplitTransferPoint& pt :
             transfer_split(f, F, tr_level, tr_level + 1))
          pts.push_back(
              {{"a", pt.a.to_string()}, {"value", num_json(pt.value)}});
        return emit(config, {{"split", true}, {"points", pts}}, kExitPass);
      }
      std::optional<Quartic> c;
      if (tr_constant == "one") c = Quartic(0);
      AbsNorm norm = tr_norm == "base" ? AbsNorm::Base : AbsNorm::Ext;
      return emit(config, transfer_json(transfer(f, E, tr_level, c, norm)),
                  kExitPass);
    }

    if (app.got_subcommand(fl)) {
      c_fl.load_config();
      FieldPtr F = parse_field(c_fl.field);
      ExtPtr E = parse_ext(F, c_fl.ext);
      FlReport rep = fl_check(E, fl_depth);
      RunConfig config = c_fl.config("fl-check");
      config.entries["depth"] = std::to_string(fl_depth);
      int code = !rep.applicable ? kExitInconclusive
                 : rep.pass      ? kExitPass
                                 : kExitFail;
      return emit(config, fl_json(rep), code);
    }

    if (app.got_subcommand(germ)) {
      c_germ.load_config();
      FieldPtr F = parse_field(c_germ.field);
      ExtPtr E = parse_ext(F, c_germ.ext);
      TestFunction f = parse_cells(c_germ.cells);
      RunConfig config = c_germ.config("germ-expand", true, true);
      config.entries["n_max"] = std::to_string(germ_nmax);
      return emit(config, germ_json(germ_profile(E, f, germ_nmax)), kExitPass);
    }

    if (app.got_subcommand(shal)) {
      c_shalika.load_config();
      FieldPtr F = parse_field(c_shalika.field);
      TestFunction f = parse_cells(c_shalika.cells);
      ShalikaReport rep = shalika_compare(F, f);
      RunConfig config = c_shalika.config("shalika-compare", false, true);
      int code = rep.refused ? kExitInconclusive
                 : rep.pass  ? kExitPass
                             : kExitFail;
      return emit(config, shalika_json(rep), code);
    }

    if (app.got_subcommand(charid)) {
      c_charid.load_config();
      FieldPtr F = parse_field(c_charid.field);
      ExtPtr E = parse_ext(F, c_charid.ext);
      RunConfig config = c_charid.config("char-identity");
      config.entries["level"] = std::to_string(charid_level);
      config.entries["samples"] = std::to_string(charid_samples);
      std::mt19937_64 rng(c_charid.seed);
      bool all = true;
      nlohmann::json rows = nlohmann::json::array();
      for (const TorusChar& th : enumerate_torus_chars(E, charid_level)) {
        bool ok = true;
        for (int s = 0; s < charid_samples; ++s)
          ok = ok && char_identity_check(th, sample_regular(E, rng)).pass;
        rows.push_back({{"theta", char_json(th)}, {"pass", ok}});
        all = all && ok;
      }
      return emit(config, {{"rows", rows}, {"pass", all}},
                  all ? kExitPass : kExitFail);
    }

    if (app.got_subcommand(orth)) {
      c_orth.load_config();
      FieldPtr F = parse_field(c_orth.field);
      ExtPtr E = parse_ext(F, c_orth.ext);
      RunConfig config = c_orth.config("orthogonality");
      config.entries["level"] = std::to_string(orth_level);
      bool all = true;
      nlohmann::json rows = nlohmann::json::array();
      for (const TorusChar& th : enumerate_torus_chars(E, orth_level)) {
        Rational integral = orthogonality_integral(th);
        Rational expected = th.order <= 2 ? 4 : 2;
        bool ok = integral == expected;
        rows.push_back({{"theta", char_json(th)},
                        {"integral", num_json(integral)},
                        {"expected", num_json(expected)},
                        {"pass", ok}});
        all = all && ok;
      }
      return emit(config, {{"rows", rows}, {"pass", all}},
                  all ? kExitPass : kExitFail);
    }

    if (app.got_subcommand(weyl)) {
      c_weyl.load_config();
      FieldPtr F = parse_field(c_weyl.field);
      ExtPtr E = parse_ext(F, c_weyl.ext);
      TestFunction f = parse_cells(c_weyl.cells);
      RunConfig config = c_weyl.config("weyl-check", true, true);
      config.entries["level"] = std::to_string(weyl_level);
      int fails = 0, passes = 0;
      nlohmann::json rows = nlohmann::json::array();
      for (const TorusChar& th : enumerate_torus_chars(E, weyl_level)) {
        WeylReport rep = weyl_spectral_check(th, f);
        rows.push_back({{"theta", char_json(th)}, {"check", weyl_json(rep)}});
        fails += rep.status == WeylReport::Status::Fail ? 1 : 0;
        passes += rep.status == WeylReport::Status::Pass ? 1 : 0;
      }
      int code = fails > 0 ? kExitFail
                 : passes  ? kExitPass
                           : kExitInconclusive;
      return emit(config, {{"rows", rows}, {"pass", fails == 0}}, code);
    }

    if (app.got_subcommand(orc)) {
      c_oracle.load_config();
      FieldPtr F = parse_field(c_oracle.field);
      RunConfig config = c_oracle.config("oracle");
      config.entries["op"] = orc_op;
      if (orc_op == "unit-quotient") {
        ExtPtr E = parse_ext(F, c_oracle.ext);
        config.entries["m"] = std::to_string(orc_m);
        long count = oracle_unit_quotient(E, orc_m);
        Rational formula = measure_constant(E, orc_m);
        return emit(config,
                    {{"count", count},
                     {"formula", num_json(formula)},
                     {"agree", formula == count}},
                    formula == count ? kExitPass : kExitFail);
      }
      if (orc_op == "norm") {
        ExtPtr E = parse_ext(F, c_oracle.ext);
        LocalElem x = parse_elem(F, orc_x);
        config.entries["x"] = orc_x;
        config.entries["level"] = std::to_string(orc_level);
        bool member = oracle_norm_membership(E, x, orc_level);
        bool agree = member == (E->epsilon(x) == 1);
        return emit(config,
                    {{"x", x.to_string()},
                     {"is_norm", member},
                     {"epsilon_agrees", agree}},
                    agree ? kExitPass : kExitFail);
      }
      config.entries["level"] = std::to_string(orc_level);
      return emit(config,
                  {{"square_classes", square_class_count(F, orc_level)}},
                  kExitPass);
    }

    if (app.got_subcommand(verify)) {
      c_verify.load_config();
      RunConfig config;
      config.entries["command"] = "verify-all";
      config.entries["quick"] = verify_quick ? "true" : "false";
      config.entries["seed"] = std::to_string(c_verify.seed);
      config.entries["format"] = c_verify.format;
      std::vector<CriterionResult> results =
          run_acceptance(verify_quick, c_verify.seed);
      bool all = true;
      nlohmann::json rows = nlohmann::json::array();
      for (const CriterionResult& r : results) {
        nlohmann::json row = {{"index", r.index},
                              {"name", r.name},
                              {"pass", r.pass}};
        if (!r.detail.empty()) row["detail"] = r.detail;
        rows.push_back(std::move(row));
        all = all && r.pass;
      }
      return emit(config, {{"criteria", rows}, {"pass", all}},
                  all ? kExitPass : kExitFail);
    }
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const InsufficientPrecision& e) {
    std::cerr << "inconclusive: " << e.what() << "\n";
    return kExitInconclusive;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
