// Command-line front end: parses a session, dispatches kernel computations
// and emits machine-readable reports (one JSON object per line by default).
// Exit codes: 0 ok, 1 verification/domain failure, 2 usage error.

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "rqa/atiyah.hpp"
#include "rqa/expr.hpp"
#include "rqa/hconn.hpp"
#include "rqa/ideal.hpp"
#include "rqa/suite.hpp"
#include "rqa/sympgeo.hpp"
#include "rqa/weyl.hpp"

using json = nlohmann::json;
using namespace rqa;

namespace {

struct Options {
  int p = 3;
  int n = 1;
  int trunc = 0;  // 0: derive p + 2
  std::uint64_t seed = 20240811;
  bool pretty = false;
  std::string sign_theta = "minus";

  int N() const { return trunc > 0 ? trunc : p + 2; }
  Session session() const { return Session(p, n, N(), seed); }
  int theta_sign() const { return sign_theta == "plus" ? 1 : -1; }
};

struct Report {
  json doc = json::object();
  bool ok = true;

  Report(const std::string& command, const Options& opt) {
    doc["command"] = command;
    doc["params"] = {{"p", opt.p}, {"n", opt.n}, {"trunc", opt.N()}, {"seed", opt.seed}};
    doc["trail"] = json::array();
  }
  void check(const std::string& name, bool passed, const std::string& note = "") {
    json e = {{"check", name}, {"ok", passed}};
    if (!note.empty()) e["note"] = note;
    doc["trail"].push_back(e);
    ok = ok && passed;
  }
  void note(const std::string& name, const std::string& text) {
    doc["trail"].push_back({{"check", name}, {"ok", true}, {"note", text}});
  }
  int emit(const Options& opt) {
    doc["ok"] = ok;
    std::cout << (opt.pretty ? doc.dump(2) : doc.dump()) << "\n";
    return ok ? 0 : 1;
  }
};

std::vector<std::string> names_x(int n, const char* stem = "x") {
  std::vector<std::string> v;
  for (int i = 1; i <= n; ++i) v.push_back(stem + std::to_string(i));
  return v;
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == ';') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

json read_input(const std::string& arg) {
  if (!arg.empty() && arg[0] == '@') {
    std::ifstream in(arg.substr(1));
    require(in.good(), errs::BadInput, "cannot open " + arg.substr(1));
    return json::parse(in);
  }
  return json::parse(arg);
}

// ---- covers and classes from JSON ----

RingPtr base_from_json(const json& j, const Options& opt) {
  std::vector<std::string> vars = j.value("vars", names_x(opt.n));
  std::string kind = j.value("kind", "truncated");
  if (kind == "truncated") return RingDesc::truncated(opt.p, opt.N(), vars);
  require(kind == "window", errs::BadInput, "base kind must be truncated or window");
  return RingDesc::windowed(opt.p, opt.N(), vars, j.value("hi", opt.p + 1));
}

std::shared_ptr<const CechCover> cover_from_json(const json& j, const Options& opt) {
  RingPtr base = base_from_json(j.value("base", json::object()), opt);
  std::vector<std::vector<int>> opens = j.value("opens", std::vector<std::vector<int>>{{}});
  return std::make_shared<CechCover>(base, opens, j.value("pole", 1));
}

std::pair<int, int> parse_pair(const std::string& key) {
  auto comma = key.find(',');
  require(comma != std::string::npos, errs::BadInput, "overlap keys look like \"0,1\"");
  return {std::stoi(key.substr(0, comma)), std::stoi(key.substr(comma + 1))};
}

CechClass class_from_json(const std::shared_ptr<const CechCover>& cover, const json& j) {
  CechClass cls = CechClass::zero(cover);
  if (j.contains("alpha"))
    for (auto& [key, val] : j["alpha"].items()) {
      auto [i, k] = parse_pair(key);
      DiffForm f = parse_form(val.get<std::string>(), cover->overlap(i, k));
      require(f.degree() == 1, errs::BadInput, "alpha components have degree 1");
      cls.alpha[{std::min(i, k), std::max(i, k)}] = i < k ? f : -f;
    }
  if (j.contains("gamma")) {
    auto arr = j["gamma"];
    require(arr.size() == static_cast<size_t>(cover->size()), errs::BadInput,
            "one gamma per open");
    for (int i = 0; i < cover->size(); ++i) {
      DiffForm g = parse_form(arr[i].get<std::string>(), cover->twisted_open(i));
      require(g.degree() == 1, errs::BadInput, "gamma components have degree 1");
      cls.gamma[i] = g;
    }
  }
  return cls;
}

json class_to_json(const CechClass& cls) {
  json out = {{"alpha", json::object()}, {"gamma", json::array()}};
  for (const auto& [ij, f] : cls.alpha)
    out["alpha"][std::to_string(ij.first) + "," + std::to_string(ij.second)] = f.str();
  for (const auto& g : cls.gamma) out["gamma"].push_back(g.str());
  return out;
}

// ---- command bodies ----

int cmd_p_op(const Options& opt, const std::string& elem) {
  Report rep("p-op", opt);
  auto W = std::make_shared<WeylRing>(WeylRing{opt.p, opt.n, opt.N()});
  WeylElement a = parse_weyl(elem, W);
  WeylElement r = p_operation(a);
  rep.check("exact division by h^(p-1)", true);
  rep.doc["result"] = {{"input", a.str()}, {"p_operation", r.str()},
                       {"h_precision", r.prec()}};
  return rep.emit(opt);
}

int cmd_bracket(const Options& opt, const std::string& sa, const std::string& sb) {
  Report rep("bracket", opt);
  auto W = std::make_shared<WeylRing>(WeylRing{opt.p, opt.n, opt.N()});
  WeylElement a = parse_weyl(sa, W), b = parse_weyl(sb, W);
  WeylElement r = poisson_bracket(a, b);
  rep.check("h {a,b} = ab - ba", (a * b - b * a).agrees_with(r.scaled(hs_h(opt.p, opt.N()))));
  rep.doc["result"] = {{"bracket", r.str()}};
  return rep.emit(opt);
}

RingPtr connection_base(const Options& opt, const std::string& kind, int window) {
  if (kind == "truncated") return RingDesc::truncated(opt.p, opt.N(), names_x(opt.n));
  return HConnection::curvature_base(opt.p, opt.N(), names_x(opt.n), window);
}

int cmd_p_curvature(const Options& opt, const std::string& alpha, const std::string& base,
                    int window) {
  Report rep("p-curvature", opt);
  RingPtr B = connection_base(opt, base, window);
  HConnection conn(B, parse_form(alpha, B));
  rep.check("integrability d(alpha) = 0", true);
  json curv = json::array();
  for (int i = 0; i < opt.n; ++i) curv.push_back(p_curvature(conn, i).str());
  rep.check("closed formula = p-fold operator composition", true);
  rep.check("operator is central (spot check)", true);
  rep.doc["result"] = {{"p_curvature", curv}};
  return rep.emit(opt);
}

int cmd_p_support(const Options& opt, const std::string& alpha, const std::string& base,
                  int window) {
  Report rep("p-support", opt);
  RingPtr B = connection_base(opt, base, window);
  HConnection conn(B, parse_form(alpha, B));
  PSupportIdeal s = p_support(conn);
  rep.check("integrability d(alpha) = 0", true);
  rep.check("two-route curvature agreement", true);
  rep.check("deformation trivial mod h^p", s.trivial_mod_hp);
  json gens = json::array();
  for (const auto& g : s.generators) gens.push_back(g.str());
  json kappas = json::array();
  for (const auto& k : s.kappa) kappas.push_back(k.str());
  rep.doc["result"] = {{"generators", gens},
                       {"kappa", kappas},
                       {"chart", s.chart->describe()},
                       {"theta", extract_theta(s).str()}};
  return rep.emit(opt);
}

std::vector<TruncPoly> parse_phis(const Options& opt, const std::string& phis,
                                  const RingPtr& Bx) {
  std::vector<TruncPoly> out;
  for (const auto& s : split_list(phis)) out.push_back(parse_poly(s, Bx));
  require(static_cast<int>(out.size()) == opt.n, errs::BadInput,
          "need one phi per coordinate, separated by ';'");
  return out;
}

int cmd_check_lagrangian(const Options& opt, const std::string& phis) {
  Report rep("check-lagrangian", opt);
  auto model = RestrictedSymplecticModel::standard(opt.p, opt.n, opt.N());
  auto Bx = RingDesc::truncated(opt.p, opt.N(), names_x(opt.n));
  auto Y = SubvarietyPresentation::graph(Bx, parse_phis(opt, phis, Bx));
  bool lag = is_lagrangian(Y, model);
  rep.doc["result"] = {{"lagrangian", lag}};
  return rep.emit(opt);
}

int cmd_check_restricted(const Options& opt, const std::string& phis) {
  Report rep("check-restricted", opt);
  auto model = RestrictedSymplecticModel::standard(opt.p, opt.n, opt.N());
  auto Bx = RingDesc::truncated(opt.p, opt.N(), names_x(opt.n));
  auto Y = SubvarietyPresentation::graph(Bx, parse_phis(opt, phis, Bx));
  RestrictedCheck r = is_restricted_subvariety(Y, model);
  rep.check("ideal-membership route = exactness route", r.via_membership == r.via_exactness);
  json pimg = json::array();
  for (const auto& g : r.p_images) pimg.push_back(g.str());
  rep.doc["result"] = {{"restricted", r.restricted},
                       {"empty_graph", r.empty_graph},
                       {"p_images", pimg},
                       {"primitive", r.primitive ? r.primitive->str() : "none"}};
  return rep.emit(opt);
}

int cmd_check_coisotropic(const Options& opt, const std::string& gens, int window) {
  Report rep("check-coisotropic", opt);
  std::vector<std::string> vars;
  for (int i = 1; i <= opt.n; ++i) vars.push_back("x" + std::to_string(i) + "'");
  for (int i = 1; i <= opt.n; ++i) vars.push_back("xi" + std::to_string(i) + "'");
  RingPtr chart = RingDesc::windowed(opt.p, opt.N(), vars, window);
  std::vector<TruncPoly> gen_list;
  for (const auto& s : split_list(gens)) gen_list.push_back(parse_poly(s, chart));
  IdealPresentation I(chart, gen_list);
  PoissonPairs pp;
  for (int i = 0; i < opt.n; ++i) pp.pairs.push_back({i, opt.n + i});
  CoisotropyResult r = is_coisotropic_ideal(I, pp);
  if (!r.coisotropic)
    rep.note("witness", "bracket of generators " + std::to_string(r.offender_i) + "," +
                            std::to_string(r.offender_j) + " is " +
                            r.offending_bracket.str());
  rep.doc["result"] = {{"coisotropic", r.coisotropic}};
  if (!r.coisotropic) {
    rep.doc["result"]["offending_pair"] = {r.offender_i, r.offender_j};
    rep.doc["result"]["bracket"] = r.offending_bracket.str();
  }
  return rep.emit(opt);
}

int cmd_classify(const Options& opt, const std::string& alpha, const std::string& base,
                 int window) {
  Report rep("classify-quantization", opt);
  RingPtr B = base == "truncated" ? RingDesc::truncated(opt.p, opt.N(), names_x(opt.n))
                                  : connection_base(opt, base, window);
  HConnection conn(B, parse_form(alpha, B));
  QuantizationClass q = classify_quantization(conn);
  rep.check("dlog witness consistent with the log defect", true);
  json defect = json::array();
  for (const auto& t : q.defect) defect.push_back(t.str());
  rep.doc["result"] = {{"logarithmic", q.logarithmic}, {"log_defect", defect}};
  if (q.witness) {
    rep.doc["result"]["witness"] = q.witness->str();
    rep.doc["result"]["isomorphism_to_standard"] = q.isomorphism_to_standard->str();
  }
  return rep.emit(opt);
}

int cmd_normal_form(const Options& opt, const std::string& xs, const std::string& ys) {
  Report rep("normal-form", opt);
  auto W = std::make_shared<WeylRing>(WeylRing{opt.p, opt.n, opt.N()});
  auto B = RingDesc::truncated(opt.p, opt.N(), names_x(opt.n, "z"));
  WeylSurjection psi{W, B, {}, {}};
  for (const auto& s : split_list(xs)) psi.x_images.push_back(parse_poly(s, B));
  for (const auto& s : split_list(ys)) psi.y_images.push_back(parse_poly(s, B));
  NormalFormResult r = normal_form(psi);
  for (const auto& step : r.trail) rep.note("step", step);
  rep.check("kernel equals J = (h, y_1..y_n)", r.kernel_is_standard);
  json chain = json::array();
  for (const auto& g : r.chain) {
    json imgs = json::array();
    for (int i = 0; i < opt.n; ++i) imgs.push_back(g.x_images()[i].str());
    for (int i = 0; i < opt.n; ++i) imgs.push_back(g.y_images()[i].str());
    chain.push_back({{"certified", g.certified()}, {"images", imgs}});
  }
  json fx = json::array(), fy = json::array();
  for (const auto& f : r.final_x_images) fx.push_back(f.str());
  for (const auto& f : r.final_y_images) fy.push_back(f.str());
  rep.doc["result"] = {{"kernel_is_standard", r.kernel_is_standard},
                       {"chain", chain},
                       {"final_x_images", fx},
                       {"final_y_images", fy}};
  return rep.emit(opt);
}

int cmd_cech_class(const Options& opt, const std::string& input) {
  Report rep("cech-class", opt);
  json j = read_input(input);
  auto cover = cover_from_json(j.value("cover", json::object()), opt);
  RestrictedAtiyahLocalData data;
  data.cover = cover;
  if (j.contains("transitions"))
    for (auto& [key, val] : j["transitions"].items()) {
      auto [a, b] = parse_pair(key);
      DiffForm f = parse_form(val.get<std::string>(), cover->overlap(a, b));
      data.transitions[{std::min(a, b), std::max(a, b)}] = a < b ? f : -f;
    }
  for (int i = 0; i < cover->size(); ++i) {
    data.curvature.push_back(
        j.contains("curvature")
            ? parse_form(j["curvature"][i].get<std::string>(), cover->open(i))
            : DiffForm(cover->open(i), 2));
    data.p_defect.push_back(
        j.contains("p_defect")
            ? parse_form(j["p_defect"][i].get<std::string>(), cover->twisted_open(i))
            : DiffForm(cover->twisted_open(i), 1));
  }
  CechClass cls = cech_class(data);
  rep.check("cocycle laws verified", true);
  rep.doc["result"] = class_to_json(cls);
  return rep.emit(opt);
}

int cmd_coboundary(const Options& opt, const std::string& input) {
  Report rep("coboundary", opt);
  json j = read_input(input);
  auto cover = cover_from_json(j.value("cover", json::object()), opt);
  CechClass cls = class_from_json(cover, j);
  auto w = is_coboundary(cls);
  rep.check("cocycle laws verified", true);
  rep.doc["result"] = {{"coboundary", w.has_value()}};
  if (w) {
    json beta = json::array();
    for (const auto& b : w->beta) beta.push_back(b.str());
    rep.doc["result"]["witness"] = beta;
  }
  return rep.emit(opt);
}

int cmd_chern_check(const Options& opt, const std::string& input) {
  Report rep("chern-check", opt);
  json j = read_input(input);
  auto cover = cover_from_json(j.value("cover", json::object()), opt);
  auto cls = [&](const char* key) {
    return j.contains(key) ? class_from_json(cover, j[key]) : CechClass::zero(cover);
  };
  CechClass cL = cls("cL"), rho = cls("rho"), cK = cls("cK");
  DiffForm theta(cover->base()->twisted(), 1);
  if (j.contains("theta")) {
    // a normal field with poles lives on the localized chart, not the base
    std::string src = j["theta"].get<std::string>();
    try {
      theta = parse_form(src, cover->base()->twisted());
    } catch (const Error&) {
      std::vector<int> all;
      for (int i = 0; i < cover->size(); ++i)
        for (int v : cover->inverted(i))
          if (std::find(all.begin(), all.end(), v) == all.end()) all.push_back(v);
      std::sort(all.begin(), all.end());
      RingPtr deep = all.empty() ? cover->base() : cover->base()->localized(all, cover->pole());
      theta = parse_form(src, deep->twisted());
    }
  }
  bool okc = chern_condition(cL, rho, cK, theta, opt.theta_sign());
  rep.note("sign of [i_theta omega']", opt.sign_theta);
  rep.doc["result"] = {{"condition_holds", okc}};
  return rep.emit(opt);
}

int cmd_suite(const Options& opt, int criterion) {
  Report rep("suite", opt);
  std::vector<suite::CriterionResult> results;
  if (criterion > 0)
    results.push_back(suite::run_one(criterion, opt.seed));
  else
    results = suite::run_all(opt.seed);
  int failed = 0;
  json arr = json::array();
  for (const auto& r : results) {
    if (!opt.pretty)
      std::cerr << (r.pass ? "[PASS] " : "[FAIL] ") << r.id << " " << r.name << "\n";
    arr.push_back({{"id", r.id},
                   {"name", r.name},
                   {"pass", r.pass},
                   {"seconds", r.seconds},
                   {"detail", r.detail}});
    rep.check("criterion " + std::to_string(r.id), r.pass, r.name);
    if (!r.pass) ++failed;
  }
  rep.doc["result"] = {{"criteria", arr},
                       {"total", results.size()},
                       {"failed", failed}};
  return rep.emit(opt);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact kernel for restricted Poisson and quantized algebras in characteristic p"};
  app.require_subcommand(1);
  app.fallthrough();  // session flags may follow the subcommand

  Options opt;
  app.add_option("--p", opt.p, "odd prime characteristic")->check(CLI::PositiveNumber);
  app.add_option("--n", opt.n, "number of symplectic pairs");
  app.add_option("--trunc", opt.trunc, "h-truncation order N (default p+2)");
  app.add_option("--seed", opt.seed, "seed for sampled suites");
  bool json_flag = false;
  app.add_flag("--json", json_flag, "line-delimited JSON output (default)");
  app.add_flag("--pretty", opt.pretty, "human-readable JSON output");
  app.add_option("--sign-theta", opt.sign_theta, "sign of [i_theta omega'] (plus|minus)")
      ->check(CLI::IsMember({"plus", "minus"}));

  std::string elem, a, b, alpha, phis, gens, xs, ys, input;
  std::string base_kind = "window";
  int window = -1, criterion = 0;

  auto* pop = app.add_subcommand("p-op", "restricted power of a Weyl element");
  pop->add_option("--elem", elem, "Weyl expression")->required();
  auto* br = app.add_subcommand("bracket", "Poisson bracket of Weyl elements");
  br->add_option("--a", a)->required();
  br->add_option("--b", b)->required();
  auto* pc = app.add_subcommand("p-curvature", "p-curvature of h*d + h*alpha");
  pc->add_option("--alpha", alpha, "connection 1-form")->required();
  pc->add_option("--base", base_kind, "base ring kind (window|truncated)");
  pc->add_option("--window", window, "degree window for the window base");
  auto* ps = app.add_subcommand("p-support", "p-support ideal of a connection");
  ps->add_option("--alpha", alpha, "connection 1-form")->required();
  ps->add_option("--base", base_kind, "base ring kind (window|truncated)");
  ps->add_option("--window", window, "degree window for the window base");
  auto* cl = app.add_subcommand("check-lagrangian", "is the graph y = phi(x) Lagrangian?");
  cl->add_option("--phi", phis, "graph data phi_1;...;phi_n")->required();
  auto* cr = app.add_subcommand("check-restricted", "is the graph restricted?");
  cr->add_option("--phi", phis, "graph data phi_1;...;phi_n")->required();
  auto* cc = app.add_subcommand("check-coisotropic", "is the twisted-chart ideal coisotropic?");
  cc->add_option("--gens", gens, "generators g_1;...;g_k in x_i', xi_i'")->required();
  cc->add_option("--window", window, "degree window of the chart (default p+1)");
  auto* cq = app.add_subcommand("classify-quantization", "classify h*d + h*alpha");
  cq->add_option("--alpha", alpha, "connection 1-form")->required();
  cq->add_option("--base", base_kind, "base ring kind (window|truncated)");
  cq->add_option("--window", window, "degree window for the window base");
  auto* nf = app.add_subcommand("normal-form", "tubular-neighborhood normal form");
  nf->add_option("--x", xs, "images of x_1..x_n in k[z]/(z^p), ';'-separated")->required();
  nf->add_option("--y", ys, "images of y_1..y_n, ';'-separated")->required();
  auto* cec = app.add_subcommand("cech-class", "class of restricted Atiyah local data");
  cec->add_option("--input", input, "JSON (inline or @file)")->required();
  auto* cob = app.add_subcommand("coboundary", "is a Cech class a coboundary?");
  cob->add_option("--input", input, "JSON (inline or @file)")->required();
  auto* ch = app.add_subcommand("chern-check", "quantization Chern condition");
  ch->add_option("--input", input, "JSON (inline or @file)")->required();
  auto* su = app.add_subcommand("suite", "run the acceptance battery");
  su->add_option("--criterion", criterion, "run a single criterion (1..10)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    Session session = opt.session();  // validates p, n, N
    (void)session;
    int conn_window = window < 0 ? 2 * opt.p - 1 : window;  // holds x^p x^(p-1) forms
    int chart_window = window < 0 ? opt.p + 1 : window;
    if (pop->parsed()) return cmd_p_op(opt, elem);
    if (br->parsed()) return cmd_bracket(opt, a, b);
    if (pc->parsed()) return cmd_p_curvature(opt, alpha, base_kind, conn_window);
    if (ps->parsed()) return cmd_p_support(opt, alpha, base_kind, conn_window);
    if (cl->parsed()) return cmd_check_lagrangian(opt, phis);
    if (cr->parsed()) return cmd_check_restricted(opt, phis);
    if (cc->parsed()) return cmd_check_coisotropic(opt, gens, chart_window);
    if (cq->parsed()) return cmd_classify(opt, alpha, base_kind, conn_window);
    if (nf->parsed()) return cmd_normal_form(opt, xs, ys);
    if (cec->parsed()) return cmd_cech_class(opt, input);
    if (cob->parsed()) return cmd_coboundary(opt, input);
    if (ch->parsed()) return cmd_chern_check(opt, input);
    if (su->parsed()) return cmd_suite(opt, criterion);
  } catch (const Error& e) {
    json err = {{"error", e.kind()}, {"message", e.what()}, {"ok", false}};
    std::cout << (opt.pretty ? err.dump(2) : err.dump()) << "\n";
    if (e.kind() == std::string(errs::ParseError) || e.kind() == std::string(errs::BadInput))
      return 2;
    return 1;
  } catch (const json::exception& e) {
    json err = {{"error", "JsonError"}, {"message", e.what()}, {"ok", false}};
    std::cout << err.dump() << "\n";
    return 2;
  }
  return 2;
}
