// qdiss: validate quantales, dump derived hom-sets, check similarity-type
// matrices, run theorem suites and search for quantaloid isomorphisms.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <openssl/evp.h>

#include "CLI11.hpp"
#include "json.hpp"
#include "qdiss/qdiss.hpp"

using json = nlohmann::ordered_json;
using namespace qdiss;

namespace {

struct Options {
  std::string format = "text";
  std::uint64_t budget = 10'000'000;
  std::uint64_t seed = 1;
  std::size_t samples = 200;
  bool timing = true;
};

std::string sha256_hex(const std::string& data) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr);
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned i = 0; i < len; ++i) {
    out += hex[md[i] >> 4];
    out += hex[md[i] & 15];
  }
  return out;
}

/// One verdict-bearing entry of a report.
struct Check {
  std::string id;
  std::string verdict;  // pass | fail | sampled
  json witnesses = json::array();
  json details = json::object();
  std::vector<std::string> lines;  // text rendering
  double seconds = 0;

  Check() = default;
  Check(std::string i, std::string v) : id(std::move(i)), verdict(std::move(v)) {}
};

struct Report {
  std::string command;
  std::string input;
  std::string digest_source;
  std::vector<Check> checks;

  bool ok() const {
    for (const auto& c : checks)
      if (c.verdict == "fail") return false;
    return true;
  }

  void emit(const Options& o) const {
    if (o.format == "machine") {
      json j;
      j["tool"] = "qdiss";
      j["version"] = kVersion;
      j["command"] = command;
      j["input"] = input;
      j["input_digest"] = "sha256:" + sha256_hex(digest_source);
      j["checks"] = json::array();
      for (const auto& c : checks) {
        json cj;
        cj["id"] = c.id;
        cj["verdict"] = c.verdict;
        cj["witnesses"] = c.witnesses;
        cj["details"] = c.details;
        if (o.timing) cj["timing_ms"] = static_cast<std::int64_t>(c.seconds * 1000.0 + 0.5);
        j["checks"].push_back(cj);
      }
      j["verdict"] = ok() ? "pass" : "fail";
      std::cout << j.dump(2) << "\n";
      return;
    }
    std::cout << command << " " << input << "\n";
    for (const auto& c : checks) {
      std::cout << "[" << c.verdict << "] " << c.id;
      if (o.timing) std::printf(" (%.3fs)", c.seconds);
      std::cout << "\n";
      for (const auto& l : c.lines) std::cout << "  " << l << "\n";
    }
    std::cout << "verdict: " << (ok() ? "pass" : "fail") << "\n";
  }
};

}  // namespace

namespace {

double since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

json violations_json(const std::vector<Violation>& vs) {
  json a = json::array();
  for (const auto& v : vs) a.push_back({{"rule", v.rule}, {"witness", v.witness}});
  return a;
}

std::vector<std::string> violation_lines(const std::vector<Violation>& vs) {
  std::vector<std::string> out;
  for (const auto& v : vs) out.push_back("violation: " + v.str());
  return out;
}

bool is_lawvere(const std::string& s) { return s == "lawvere"; }

/// A file path when one exists, otherwise a builtin name.
std::pair<Quantale, std::string> load_any(const std::string& qarg) {
  if (std::filesystem::is_regular_file(qarg)) {
    std::string text = read_text_file(qarg);
    std::string stem = std::filesystem::path(qarg).stem().string();
    Quantale Q = parse_quantale(text, stem);
    return {std::move(Q), text};
  }
  Quantale Q = quantale_by_name(qarg);
  std::string canon = serialize_quantale(Q);
  return {std::move(Q), canon};
}

std::string labels_of(const Quantale& Q, const std::vector<Element>& es) {
  std::string s = "{";
  for (std::size_t i = 0; i < es.size(); ++i) s += (i ? ", " : "") + Q.label(es[i]);
  return s + "}";
}

json labels_json(const Quantale& Q, const std::vector<Element>& es) {
  json a = json::array();
  for (Element e : es) a.push_back(Q.label(e));
  return a;
}

QuantaloidKind parse_kind(const std::string& s) {
  if (s == "D") return QuantaloidKind::D;
  if (s == "H") return QuantaloidKind::H;
  if (s == "B") return QuantaloidKind::B;
  if (s == "K") return QuantaloidKind::K;
  throw Error(ErrorCode::UnknownName, "quantaloid must be one of D, H, B, K");
}

// ---- validate ----

Report cmd_validate(const std::string& qarg, const Options& o) {
  Report rep{"validate", qarg, qarg, {}};
  auto t0 = std::chrono::steady_clock::now();
  if (is_lawvere(qarg)) {
    Check c{"lawvere-laws", "sampled"};
    // Every triple is checked, so the point set stays small.
    auto pts = random_intervals(o.seed, std::max<std::size_t>(1, o.samples / 4));
    std::vector<ExtRational> xs;
    for (const auto& iv : pts) {
      xs.push_back(ExtRational(iv.lo));
      xs.push_back(iv.hi);
    }
    auto r = check_lawvere_laws(LawvereQuantale{}, xs);
    if (!r.ok()) c.verdict = "fail";
    c.witnesses = violations_json(r.violations);
    c.lines = violation_lines(r.violations);
    c.details = {{"scope", "sampled"}, {"points", with_anchors(LawvereQuantale{}, xs).size()}};
    c.lines.push_back("scope: sampled, seed " + std::to_string(o.seed));
    c.seconds = since(t0);
    rep.checks.push_back(c);
    return rep;
  }
  auto [Q, src] = load_any(qarg);
  rep.digest_source = src;
  Check laws{"quantale-laws", "pass"};
  laws.details = {{"size", Q.size()}, {"scope", "exhaustive"}};
  laws.lines.push_back("elements: " + std::to_string(Q.size()));
  auto adj = check_adjunction(Q);
  adj.merge(check_involution_residuals(Q));
  if (!adj.ok()) laws.verdict = "fail";
  laws.witnesses = violations_json(adj.violations);
  for (auto& l : violation_lines(adj.violations)) laws.lines.push_back(l);
  laws.seconds = since(t0);
  rep.checks.push_back(laws);

  t0 = std::chrono::steady_clock::now();
  Check prof{"profile", "pass"};
  auto p = classify(Q);
  json flags = {{"commutative", p.commutative}, {"integral", p.integral}, {"divisible", p.divisible},
                {"idempotent", p.idempotent},   {"frame", p.frame},       {"mv", p.mv},
                {"girard", p.girard},           {"involutive", p.involutive}};
  prof.details["flags"] = flags;
  prof.details["cyclic_dualizing"] = labels_json(Q, p.cyclic_dualizing);
  json wit = json::object();
  for (const auto& [k, w] : p.witnesses) wit[k] = w;
  prof.details["witnesses"] = wit;
  for (const auto& [k, v] : flags.items()) {
    std::string line = k + ": " + (v.get<bool>() ? "yes" : "no");
    if (p.witnesses.count(k) && !p.witnesses.at(k).empty() && !v.get<bool>()) {
      line += "  (witness:";
      for (const auto& w : p.witnesses.at(k)) line += " " + w;
      line += ")";
    }
    prof.lines.push_back(line);
  }
  prof.lines.push_back("cyclic dualizing: " + labels_of(Q, p.cyclic_dualizing));
  prof.seconds = since(t0);
  rep.checks.push_back(prof);
  return rep;
}

// ---- homs ----

Report cmd_homs(const std::string& qarg, const std::string& which, const std::string& ps, const std::string& qs) {
  auto [Q0, src] = load_any(qarg);
  auto Q = share(std::move(Q0));
  Report rep{"homs", qarg, src, {}};
  auto t0 = std::chrono::steady_clock::now();
  auto K = SmallQuantaloid::build(Q, parse_kind(which));
  Element p = Q->find(ps), q = Q->find(qs);
  Check c{which + "(" + Q->label(p) + "," + Q->label(q) + ")", "pass"};
  const auto& h = K.hom(p, q);
  c.details = {{"quantaloid", which}, {"source", Q->label(p)}, {"target", Q->label(q)}, {"hom", labels_json(*Q, h)}};
  c.lines.push_back(labels_of(*Q, h));
  c.seconds = since(t0);
  rep.checks.push_back(c);
  return rep;
}

// ---- check ----

SimilarityMode parse_mode(const std::string& s) {
  if (s == "full") return SimilarityMode::Full;
  if (s == "divisible") return SimilarityMode::Divisible;
  if (s == "frame") return SimilarityMode::Frame;
  throw Error(ErrorCode::UnknownName, "mode must be full, divisible or frame");
}

Report cmd_check(const std::string& kind, const std::string& qarg, const std::string& matrix_path,
                 const std::string& mode, const Options& o) {
  (void)o;
  std::string mtext = read_text_file(matrix_path);
  MatrixFile mf = parse_matrix_file(mtext);
  Report rep{"check", qarg + " " + matrix_path, qarg + "\n" + mtext, {}};
  auto t0 = std::chrono::steady_clock::now();
  Check c{kind, "pass"};
  auto finish = [&](const ValidationReport& r) {
    if (!r.ok()) c.verdict = "fail";
    else if (r.scope == Scope::Sampled) c.verdict = "sampled";
    c.witnesses = violations_json(r.violations);
    c.lines = violation_lines(r.violations);
    c.details["scope"] = to_string(r.scope);
    c.details["carrier"] = mf.carrier.size();
  };
  if (is_lawvere(qarg)) {
    LawvereQuantale L;
    auto a = resolve_matrix(mf, L);
    if (kind == "similarity") finish(check_similarity(L, a, parse_mode(mode), mf.carrier));
    else if (kind == "dissimilarity") {
      auto d = check_dissimilarity(L, a, mf.carrier);
      finish(d.report);
      c.details["rigid"] = d.rigid;
    } else throw Error(ErrorCode::NotAFrame, "apartness needs a frame; lawvere is not one");
  } else {
    auto [Q, src] = load_any(qarg);
    rep.digest_source = src + "\n" + mtext;
    auto a = resolve_matrix(mf, Q);
    if (kind == "similarity") {
      finish(check_similarity(Q, a, parse_mode(mode), mf.carrier));
    } else if (kind == "dissimilarity") {
      auto d = check_dissimilarity(Q, a, mf.carrier);
      finish(d.report);
      c.details["rigid"] = d.rigid;
      c.lines.push_back(std::string("rigid: ") + (d.rigid ? "yes" : "no"));
    } else if (kind == "apartness") {
      if (mf.extent.empty()) throw Error(ErrorCode::ParseError, "apartness needs an EXTENT section");
      finish(check_apartness(Q, resolve_extent(mf, Q), a, mf.carrier));
    } else {
      throw Error(ErrorCode::UnknownName, "kind must be similarity, dissimilarity or apartness");
    }
  }
  c.seconds = since(t0);
  rep.checks.push_back(c);
  return rep;
}

// ---- verify ----

Check suite_check(const SuiteResult& r) {
  Check c{r.id, to_string(r.verdict)};
  c.witnesses = violations_json(r.witnesses);
  c.lines = violation_lines(r.witnesses);
  for (const auto& n : r.notes) c.lines.push_back("note: " + n);
  c.details = {{"quantale", r.quantale}, {"checked", r.checked}, {"notes", r.notes}};
  c.seconds = r.seconds;
  return c;
}

Report cmd_verify(const std::string& suite, const std::string& qarg, std::size_t max_carrier, const Options& o) {
  Report rep{"verify", suite + " " + qarg, qarg, {}};
  if (is_lawvere(qarg)) {
    rep.digest_source = "lawvere seed=" + std::to_string(o.seed) + " samples=" + std::to_string(o.samples);
    std::vector<std::string> names = suite == "all" ? sampled_suite_names() : std::vector<std::string>{suite};
    for (const auto& s : names) rep.checks.push_back(suite_check(run_sampled_suite(s, o.seed, o.samples)));
    return rep;
  }
  auto [Q, src] = load_any(qarg);
  rep.digest_source = src;
  auto Dq = derive_all(share(std::move(Q)));
  std::vector<std::string> names = suite == "all" ? suite_names() : std::vector<std::string>{suite};
  for (const auto& s : names) rep.checks.push_back(suite_check(run_suite(s, Dq, max_carrier)));
  return rep;
}

// ---- search-iso ----

Report cmd_search_iso(const std::string& qarg, const std::string& pair, const Options& o) {
  auto [Q0, src] = load_any(qarg);
  Report rep{"search-iso", qarg, src, {}};
  auto t0 = std::chrono::steady_clock::now();
  auto Dq = derive_all(share(std::move(Q0)));
  const Quantale& Q = *Dq.base;
  QuantaloidPtr A, B;
  if (pair == "DB") A = Dq.D, B = Dq.B;
  else if (pair == "HK") A = Dq.H, B = Dq.K;
  else throw Error(ErrorCode::UnknownName, "pair must be DB or HK");
  auto res = iso_search(A, B, o.budget);
  Check c{"iso-" + pair, res.verdict == IsoVerdict::BudgetExceeded ? "fail" : "pass"};
  const auto prof = classify(Q);
  c.details = {{"result", to_string(res.verdict)},
               {"source", A->name()},
               {"target", B->name()},
               {"nodes", res.nodes},
               {"girard", prof.girard},
               {"commutative", prof.commutative}};
  c.lines.push_back(std::string("result: ") + to_string(res.verdict) + " after " + std::to_string(res.nodes) + " nodes");
  c.lines.push_back(std::string("girard: ") + (prof.girard ? "yes" : "no"));
  if (res.iso) {
    json objs = json::object();
    std::string line = "objects:";
    for (Element p = 0; p < Q.size(); ++p) {
      objs[Q.label(p)] = Q.label(res.iso->object(p));
      line += " " + Q.label(p) + "->" + Q.label(res.iso->object(p));
    }
    c.details["object_map"] = objs;
    c.lines.push_back(line);
    if (prof.girard) {
      Element m = prof.cyclic_dualizing.front();
      bool matches = true;
      for (Element p = 0; p < Q.size(); ++p) matches = matches && res.iso->object(p) == Q.ldd(m, p);
      c.details["equals_linear_negation_on_objects"] = matches;
      c.lines.push_back(std::string("object map equals x -> ") + Q.label(m) + "/x: " + (matches ? "yes" : "no"));
    }
  }
  if (res.verdict == IsoVerdict::BudgetExceeded) c.lines.push_back("budget " + std::to_string(o.budget) + " exhausted");
  c.seconds = since(t0);
  rep.checks.push_back(c);
  return rep;
}

// ---- grade ----

LaxFunctor builtin_functor(const std::string& name, const DerivedQuantaloids& Dq, const std::string& elem) {
  const Quantale& Q = *Dq.base;
  if (name.rfind("id-", 0) == 0) return identity_functor(Dq.get(parse_kind(name.substr(3))));
  if (name == "neg_l") return negation_candidates(Dq).first;
  if (name == "neg_r") return negation_candidates(Dq).second;
  if (name == "neg_KH") return frame_negation_candidates(Dq).first;
  if (name == "neg_HK") return frame_negation_candidates(Dq).second;
  if (name.rfind("perp_", 0) == 0) {
    Element m;
    if (!elem.empty()) {
      m = Q.find(elem);
    } else {
      auto cd = find_cyclic_dualizing(Q);
      if (cd.empty()) throw Error(ErrorCode::NotDualizing, Q.name() + " has no cyclic dualizing element");
      m = cd.front();
    }
    auto L = linear_negation_functors(Dq, m);
    if (name == "perp_KH") return L.KH;
    if (name == "perp_HK") return L.HK;
    if (name == "perp_BD") return L.BD;
    if (name == "perp_DB") return L.DB;
  }
  throw Error(ErrorCode::UnknownName, "unknown functor '" + name +
                                          "' (id-D, id-H, id-B, id-K, neg_l, neg_r, neg_KH, neg_HK, "
                                          "perp_KH, perp_HK, perp_BD, perp_DB)");
}

Report cmd_grade(const std::string& fname, const std::string& qarg, const std::string& elem) {
  auto [Q0, src] = load_any(qarg);
  Report rep{"grade", fname + " " + qarg, src + "\n" + fname + " " + elem, {}};
  auto t0 = std::chrono::steady_clock::now();
  auto Dq = derive_all(share(std::move(Q0)));
  LaxFunctor F = builtin_functor(fname, Dq, elem);
  auto g = grade_functor(F, false);
  Check c{fname, g.is_lax ? "pass" : "fail"};
  c.details = {{"source", F.source().name()},
               {"target", F.target().name()},
               {"well_typed", g.well_typed},
               {"is_lax", g.is_lax},
               {"is_homomorphism", g.is_homomorphism},
               {"is_isomorphism", g.is_isomorphism},
               {"preserves_involution", g.preserves_involution}};
  json wit = json::object();
  for (const auto& [k, w] : g.witnesses) wit[k] = w;
  c.details["witnesses"] = wit;
  c.lines.push_back(F.source().name() + " -> " + F.target().name());
  c.lines.push_back(g.str());
  c.seconds = since(t0);
  rep.checks.push_back(c);
  return rep;
}

// ---- enumerate ----

Report cmd_enumerate(std::size_t max_size, bool commutative_only, bool with_iso, const Options& o) {
  Report rep{"enumerate", "max-size " + std::to_string(max_size), "", {}};
  auto t0 = std::chrono::steady_clock::now();
  auto all = enumerate_small_quantales(max_size);
  Check list{"quantales", "pass"};
  Check iff{"iso-iff-girard", "pass"};
  json items = json::array();
  for (const auto& Q : all) {
    auto prof = classify(Q);
    if (commutative_only && !prof.commutative) continue;
    rep.digest_source += serialize_quantale(Q);
    json it = {{"name", Q.name()},
               {"size", Q.size()},
               {"commutative", prof.commutative},
               {"integral", prof.integral},
               {"girard", prof.girard}};
    std::string line = Q.name() + " size=" + std::to_string(Q.size()) + " commutative=" +
                       (prof.commutative ? "yes" : "no") + " girard=" + (prof.girard ? "yes" : "no");
    if (with_iso && prof.commutative) {
      auto Dq = derive_all(share(Q));
      auto r = iso_search(Dq.D, Dq.B, o.budget);
      it["iso_DB"] = to_string(r.verdict);
      line += std::string(" D~B=") + to_string(r.verdict);
      bool agree = r.verdict != IsoVerdict::BudgetExceeded && ((r.verdict == IsoVerdict::Found) == prof.girard);
      if (!agree) {
        iff.verdict = "fail";
        iff.witnesses.push_back({{"rule", "iso-iff-girard"}, {"witness", {Q.name()}}});
        iff.lines.push_back("violation: " + Q.name());
      }
    }
    items.push_back(it);
    list.lines.push_back(line);
  }
  list.details = {{"count", items.size()}, {"quantales", items}};
  list.lines.insert(list.lines.begin(), "count: " + std::to_string(items.size()));
  list.seconds = since(t0);
  rep.checks.push_back(list);
  if (with_iso) {
    iff.seconds = list.seconds;
    rep.checks.push_back(iff);
  }
  return rep;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite quantales, derived quantaloids and quantale-valued similarity checks"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  bool no_timing = false;
  app.add_option("--format", o.format, "Report format")->check(CLI::IsMember({"text", "machine"}))->capture_default_str();
  app.add_flag("--no-timing", no_timing, "Omit timings from the report");
  app.add_option("--budget", o.budget, "Node budget for isomorphism search")->capture_default_str();
  app.add_option("--seed", o.seed, "Seed for sampled checks")->capture_default_str();
  app.add_option("--samples", o.samples, "Number of samples for sampled checks")->capture_default_str();

  std::string quantale, matrix, kind, which, p, q, suite, fname, elem, mode = "full", pair = "DB";
  std::size_t max_size = 3, max_carrier = 0;
  bool commutative = false, with_iso = false;

  auto* validate = app.add_subcommand("validate", "Parse, validate and classify a quantale");
  validate->add_option("quantale,--quantale", quantale, "File path or builtin name (e.g. lukasiewicz:5)");

  auto* homs = app.add_subcommand("homs", "Dump a hom-set of D(Q), H(Q), B(Q) or K(Q)");
  homs->add_option("quantale,--quantale", quantale)->required();
  homs->add_option("which", which, "D, H, B or K")->required();
  homs->add_option("p", p, "Source object")->required();
  homs->add_option("q", q, "Target object")->required();

  auto* check = app.add_subcommand("check", "Validate a similarity, dissimilarity or apartness matrix");
  check->add_option("kind", kind, "similarity, dissimilarity or apartness")->required();
  check->add_option("quantale,--quantale", quantale, "File path, builtin name or lawvere");
  check->add_option("--matrix", matrix, "Matrix file")->required();
  check->add_option("--mode", mode, "Similarity mode: full, divisible or frame")->capture_default_str();

  auto* verify = app.add_subcommand("verify", "Run a theorem suite (or all) on a quantale");
  verify->add_option("suite", suite, "Suite name or all")->required();
  verify->add_option("quantale,--quantale", quantale, "File path, builtin name or lawvere");
  verify->add_option("--max-carrier", max_carrier, "Carrier bound for matrix enumeration (0 = size-based)");

  auto* search = app.add_subcommand("search-iso", "Search for an isomorphism D(Q) ~ B(Q) or H(Q) ~ K(Q)");
  search->add_option("quantale,--quantale", quantale);
  search->add_option("--pair", pair, "DB or HK")->capture_default_str();

  auto* grade = app.add_subcommand("grade", "Grade a builtin functor between derived quantaloids");
  grade->add_option("functor", fname, "id-D, neg_l, neg_KH, perp_KH, ...")->required();
  grade->add_option("quantale,--quantale", quantale);
  grade->add_option("--element", elem, "Cyclic dualizing element for perp_* (default: first found)");

  auto* enumerate = app.add_subcommand("enumerate", "Enumerate small quantales up to isomorphism");
  enumerate->add_option("--max-size", max_size, "Largest lattice size (at most 4)")->capture_default_str();
  enumerate->add_flag("--commutative", commutative, "Only commutative quantales");
  enumerate->add_flag("--iso", with_iso, "Also search D(Q) ~ B(Q) and compare with Girard");

  CLI11_PARSE(app, argc, argv);
  o.timing = !no_timing;

  try {
    auto need_q = [&]() {
      if (quantale.empty()) throw Error(ErrorCode::UnknownName, "no quantale given");
    };
    Report rep;
    if (*validate) {
      need_q();
      rep = cmd_validate(quantale, o);
    } else if (*homs) {
      rep = cmd_homs(quantale, which, p, q);
    } else if (*check) {
      need_q();
      rep = cmd_check(kind, quantale, matrix, mode, o);
    } else if (*verify) {
      need_q();
      rep = cmd_verify(suite, quantale, max_carrier, o);
    } else if (*search) {
      need_q();
      rep = cmd_search_iso(quantale, pair, o);
    } else if (*grade) {
      need_q();
      rep = cmd_grade(fname, quantale, elem);
    } else if (*enumerate) {
      rep = cmd_enumerate(max_size, commutative, with_iso, o);
    }
    rep.emit(o);
    return rep.ok() ? 0 : 1;
  } catch (const Error& e) {
    if (o.format == "machine") {
      json j = {{"tool", "qdiss"}, {"version", kVersion}, {"error", {{"code", std::string(to_string(e.code()))}, {"message", e.what()}}}, {"verdict", "fail"}};
      std::cout << j.dump(2) << "\n";
    } else {
      std::cerr << "error: " << e.what() << "\n";
    }
    return 2;
  }
}
