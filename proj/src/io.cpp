#include "coeffspec/io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace coeffspec {

using json = nlohmann::ordered_json;

namespace {

constexpr int kMaxSize = 10000;  // desk-scale guard against absurd allocations

// ------------------------------------------------------------- small formatters

std::string labels_str(const AbstractPDS& pds, const IndexSet& xs) {
  std::string t = "{";
  for (size_t i = 0; i < xs.size(); ++i) {
    if (i) t += ",";
    t += pds.points.at(static_cast<size_t>(xs[i]));
  }
  return t + "}";
}

std::string tuple_str(const AbstractPDS& pds, const std::vector<int>& xs) {
  std::string t = "(";
  for (size_t i = 0; i < xs.size(); ++i) {
    if (i) t += ",";
    t += pds.points.at(static_cast<size_t>(xs[i]));
  }
  return t + ")";
}

std::string seq_str(const AbstractPDS& pds, const CharacterSeq& s) {
  if (s.is_finite()) return tuple_str(pds, s.chain());
  return "pre=" + tuple_str(pds, s.preperiod()) + " per=" + tuple_str(pds, s.period());
}

std::string sigma_str(const PartialInjection& sigma) {
  std::string t = "{";
  bool first = true;
  for (auto [j, k] : sigma.pairs()) {
    if (!first) t += ",";
    t += std::to_string(j) + "->" + std::to_string(k);
    first = false;
  }
  return t + "}";
}

std::string partition_str(const Partition& p) {
  std::string t = "{";
  for (int b = 0; b < p.block_count(); ++b) {
    if (b) t += ",";
    t += p.label(b);
  }
  return t + "}";
}

std::string index_set_str(const IndexSet& xs) {
  std::string t = "{";
  for (size_t i = 0; i < xs.size(); ++i) {
    if (i) t += ",";
    t += std::to_string(xs[i]);
  }
  return t + "}";
}

std::string model_summary(const ConcreteModel& m) {
  return "size=" + std::to_string(m.ground.size) + " sigma=" + sigma_str(m.sigma) +
         " partition=" + partition_str(m.partition);
}

// ------------------------------------------------------------------ json pieces

json labels_json(const AbstractPDS& pds, const std::vector<int>& xs) {
  json a = json::array();
  for (int x : xs) a.push_back(pds.points.at(static_cast<size_t>(x)));
  return a;
}

json chain_json(const AbstractPDS& pds, const CharacterSeq& s) {
  if (s.is_finite()) return labels_json(pds, s.chain());
  json o;
  o["preperiod"] = labels_json(pds, s.preperiod());
  o["period"] = labels_json(pds, s.period());
  return o;
}

json check_json(const CheckResult& c) {
  json o;
  o["ok"] = c.ok;
  if (!c.ok) o["witness"] = c.witness;
  return o;
}

json model_to_json(const ConcreteModel& m) {
  json j;
  j["kind"] = "concrete";
  j["size"] = m.ground.size;
  json sig = json::array();
  for (auto [a, b] : m.sigma.pairs()) sig.push_back(json::array({a, b}));
  j["sigma"] = sig;
  json part = json::array();
  for (const auto& blk : m.partition.blocks()) part.push_back(blk);
  j["partition"] = part;
  return j;
}

json pds_to_json(const AbstractPDS& pds) {
  json j;
  j["kind"] = "pds";
  j["points"] = pds.points;
  j["domain"] = pds.domain;
  json al = json::array();
  for (int a : pds.alpha) {
    if (a < 0)
      al.push_back(nullptr);
    else
      al.push_back(a);
  }
  j["alpha"] = al;
  return j;
}

// ----------------------------------------------------------------- strict parse

json parse_json_or_throw(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("not valid JSON: ") + e.what());
  }
}

void require_keys(const json& j, const char* what, const std::vector<std::string>& keys,
                  const std::vector<std::string>& optional = {}) {
  if (!j.is_object()) throw ParseError(std::string(what) + " must be a JSON object");
  for (const auto& k : keys)
    if (!j.contains(k))
      throw ParseError(std::string(what) + " is missing the key \"" + k + "\"");
  for (const auto& [k, v] : j.items()) {
    (void)v;
    bool known = false;
    for (const auto& want : keys) known = known || k == want;
    for (const auto& want : optional) known = known || k == want;
    if (!known) throw ParseError(std::string(what) + " has an unknown key \"" + k + "\"");
  }
}

int get_int(const json& j, const char* what) {
  if (!j.is_number_integer())
    throw ParseError(std::string(what) + " must be an integer");
  long long v = j.get<long long>();
  if (v < -kMaxSize || v > kMaxSize)
    throw ParseError(std::string(what) + " is out of the supported range");
  return static_cast<int>(v);
}

ConcreteModel model_from_json(const json& j) {
  require_keys(j, "model", {"kind", "size", "sigma", "partition"});
  if (j["kind"] != "concrete") throw ParseError("model kind must be \"concrete\"");
  int size = get_int(j["size"], "size");
  if (size < 1) throw ParseError("size must be >= 1");

  if (!j["sigma"].is_array()) throw ParseError("sigma must be an array of pairs");
  std::vector<std::pair<int, int>> pairs;
  int last_source = -1;
  for (const auto& e : j["sigma"]) {
    if (!e.is_array() || e.size() != 2)
      throw ParseError("each sigma entry must be a [source, target] pair");
    int a = get_int(e[0], "sigma source");
    int b = get_int(e[1], "sigma target");
    if (a <= last_source)
      throw ParseError("sigma pairs must be strictly sorted by source");
    last_source = a;
    pairs.emplace_back(a, b);
  }

  if (!j["partition"].is_array()) throw ParseError("partition must be an array of blocks");
  std::vector<IndexSet> blocks;
  int last_front = -1;
  for (const auto& e : j["partition"]) {
    if (!e.is_array() || e.empty())
      throw ParseError("each partition block must be a nonempty array");
    IndexSet blk;
    for (const auto& v : e) blk.push_back(get_int(v, "partition index"));
    if (blk.front() <= last_front)
      throw ParseError("partition blocks must be ordered by least element");
    last_front = blk.front();
    blocks.push_back(std::move(blk));
  }

  try {
    return ConcreteModel(GroundSet(size), PartialInjection(size, pairs),
                         Partition(size, std::move(blocks)));
  } catch (const ModelError& e) {
    throw ParseError(e.what());
  }
}

AbstractPDS pds_from_json(const json& j) {
  require_keys(j, "pds", {"kind", "points", "domain", "alpha"});
  if (j["kind"] != "pds") throw ParseError("pds kind must be \"pds\"");

  if (!j["points"].is_array() || j["points"].empty())
    throw ParseError("points must be a nonempty array of strings");
  if (j["points"].size() > static_cast<size_t>(kMaxSize))
    throw ParseError("points is out of the supported range");
  std::vector<std::string> points;
  for (const auto& p : j["points"]) {
    if (!p.is_string()) throw ParseError("points must be a nonempty array of strings");
    points.push_back(p.get<std::string>());
  }

  if (!j["domain"].is_array()) throw ParseError("domain must be an array of point indices");
  IndexSet domain;
  for (const auto& d : j["domain"]) domain.push_back(get_int(d, "domain index"));

  if (!j["alpha"].is_array()) throw ParseError("alpha must be an array");
  std::vector<int> alpha;
  for (const auto& a : j["alpha"]) {
    if (a.is_null())
      alpha.push_back(-1);
    else
      alpha.push_back(get_int(a, "alpha value"));
  }

  try {
    return AbstractPDS(std::move(points), std::move(domain), std::move(alpha));
  } catch (const ModelError& e) {
    throw ParseError(e.what());
  }
}

// ------------------------------------------------------------------ dot helpers

std::string dot_quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

std::string spectrum_dot(const AbstractPDS& pds, const DeltaLadder& ladder,
                         const SpectrumDescription& spec) {
  std::ostringstream out;
  out << "digraph coeffspec {\n";
  out << "  // system: box = in the domain Delta_1, double border = in the\n";
  out << "  // backward set Delta_-1, filled = core\n";
  out << "  subgraph cluster_system {\n    label=\"induced system\";\n";
  out << "    edge [label=\"alpha\"];\n";
  const IndexSet& back1 = ladder.delta(-1);
  for (int p = 0; p < pds.point_count(); ++p) {
    out << "    " << dot_quote(pds.points[static_cast<size_t>(p)]) << " [";
    bool first = true;
    auto attr = [&](const std::string& a) {
      if (!first) out << ",";
      out << a;
      first = false;
    };
    attr(pds.in_domain(p) ? "shape=box" : "shape=ellipse");
    if (set_contains(back1, p)) attr("peripheries=2");
    if (set_contains(ladder.core, p)) attr("style=filled,fillcolor=gray85");
    out << "];\n";
  }
  for (int p : pds.domain)
    out << "    " << dot_quote(pds.points[static_cast<size_t>(p)]) << " -> "
        << dot_quote(pds.points[static_cast<size_t>(*pds.apply(p))]) << ";\n";
  out << "  }\n";

  out << "  subgraph cluster_spectrum {\n    label=\"spectrum\";\n    node [shape=box];\n";
  for (const auto& [n, chains] : spec.hat.levels)
    for (size_t i = 0; i < chains.size(); ++i)
      out << "    \"hat" << n << "_" << i << "\" [label="
          << dot_quote(seq_str(pds, chains[i])) << "];\n";
  if (!spec.hat.tail_roots.empty())
    out << "    \"hat_tail\" [shape=note,label="
        << dot_quote("levels >= " + std::to_string(spec.hat.tail_from) + ": roots " +
                     labels_str(pds, spec.hat.tail_roots))
        << "];\n";
  for (size_t i = 0; i < spec.hat.infinite.size(); ++i)
    out << "    \"inf_" << i << "\" [peripheries=2,label="
        << dot_quote(seq_str(pds, spec.hat.infinite[i])) << "];\n";
  if (spec.hat.levels.empty() && spec.hat.tail_roots.empty() && spec.hat.infinite.empty())
    out << "    \"empty\" [shape=plaintext,label=\"(empty)\"];\n";
  out << "  }\n}\n";
  return out.str();
}

json families_json(const AbstractPDS& pds, const SpectrumFamilies& fam) {
  json levels = json::array();
  for (const auto& [n, chains] : fam.levels) {
    json lvl;
    lvl["N"] = n;
    json cs = json::array();
    for (const auto& c : chains) cs.push_back(chain_json(pds, c));
    lvl["chains"] = cs;
    levels.push_back(lvl);
  }
  json tail;
  tail["from"] = fam.tail_from;
  tail["roots"] = labels_json(pds, fam.tail_roots);
  json out;
  out["levels"] = levels;
  out["tail"] = tail;
  return out;
}

}  // namespace

// ---------------------------------------------------------------- public: parse

ConcreteModel parse_model(const std::string& text) {
  return model_from_json(parse_json_or_throw(text));
}

AbstractPDS parse_pds(const std::string& text) {
  return pds_from_json(parse_json_or_throw(text));
}

namespace {

int point_index(const std::vector<std::string>& points, const nlohmann::ordered_json& v) {
  if (!v.is_string()) throw ParseError("chain coordinate must be a point label");
  std::string s = v.get<std::string>();
  for (size_t i = 0; i < points.size(); ++i)
    if (points[i] == s) return static_cast<int>(i);
  throw ParseError("unknown point label \"" + s + "\" in spectrum");
}

std::vector<int> label_vec(const std::vector<std::string>& points,
                           const nlohmann::ordered_json& arr, const char* what) {
  if (!arr.is_array()) throw ParseError(std::string(what) + " must be an array of labels");
  std::vector<int> out;
  for (const auto& v : arr) out.push_back(point_index(points, v));
  return out;
}

SpectrumFamilies families_from_json(const std::vector<std::string>& points,
                                    const nlohmann::ordered_json& levels,
                                    const nlohmann::ordered_json& tail) {
  SpectrumFamilies fam;
  if (!levels.is_array()) throw ParseError("spectrum levels must be an array");
  for (const auto& lvl : levels) {
    require_keys(lvl, "spectrum level", {"N", "chains"});
    int n = get_int(lvl["N"], "level index");
    if (n < 0 || fam.levels.count(n))
      throw ParseError("level indices must be distinct and >= 0");
    if (!lvl["chains"].is_array()) throw ParseError("level chains must be an array");
    std::vector<CharacterSeq> chains;
    for (const auto& c : lvl["chains"]) {
      std::vector<int> coords = label_vec(points, c, "chain");
      if (static_cast<int>(coords.size()) != n + 1)
        throw ParseError("chain at level " + std::to_string(n) + " has wrong length");
      chains.push_back(CharacterSeq::finite(std::move(coords)));
    }
    fam.levels[n] = std::move(chains);
  }
  require_keys(tail, "spectrum tail", {"from", "roots"});
  fam.tail_from = get_int(tail["from"], "tail start");
  if (fam.tail_from < 1) throw ParseError("tail start must be >= 1");
  IndexSet roots;
  for (int x : label_vec(points, tail["roots"], "tail roots")) roots.push_back(x);
  fam.tail_roots = std::move(roots);
  return fam;
}

}  // namespace

ParsedSpectrum parse_spectrum(const std::string& text) {
  json j = parse_json_or_throw(text);
  require_keys(j, "spectrum", {"kind", "points", "hat", "hat_tail", "m_infinity"},
               {"upper"});
  if (j["kind"] != "spectrum") throw ParseError("spectrum kind must be \"spectrum\"");

  if (!j["points"].is_array() || j["points"].empty())
    throw ParseError("spectrum points must be a nonempty array of strings");
  ParsedSpectrum out;
  for (const auto& p : j["points"]) {
    if (!p.is_string()) throw ParseError("spectrum points must be a nonempty array of strings");
    out.points.push_back(p.get<std::string>());
  }
  {
    auto sorted = out.points;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      throw ParseError("spectrum point labels must be distinct");
  }

  out.description.hat = families_from_json(out.points, j["hat"], j["hat_tail"]);
  if (!j["m_infinity"].is_array()) throw ParseError("m_infinity must be an array");
  for (const auto& c : j["m_infinity"]) {
    require_keys(c, "infinite chain", {"preperiod", "period"});
    std::vector<int> pre = label_vec(out.points, c["preperiod"], "preperiod");
    std::vector<int> per = label_vec(out.points, c["period"], "period");
    if (per.empty()) throw ParseError("an infinite chain needs a nonempty period");
    out.description.hat.infinite.push_back(
        CharacterSeq::infinite(std::move(pre), std::move(per)));
  }
  if (j.contains("upper")) {
    require_keys(j["upper"], "upper families", {"levels", "tail"});
    SpectrumFamilies up = families_from_json(out.points, j["upper"]["levels"],
                                             j["upper"]["tail"]);
    // The unrestricted families share the infinite chains with the hat.
    up.infinite = out.description.hat.infinite;
    out.description.upper = std::move(up);
  }
  return out;
}

std::variant<ConcreteModel, AbstractPDS> parse_input(const std::string& text) {
  json j = parse_json_or_throw(text);
  if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string())
    throw ParseError("input needs a string \"kind\" field");
  std::string kind = j["kind"].get<std::string>();
  if (kind == "concrete") return model_from_json(j);
  if (kind == "pds") return pds_from_json(j);
  throw ParseError("unknown kind \"" + kind + "\" (expected \"concrete\" or \"pds\")");
}

std::string serialize_model(const ConcreteModel& model) {
  return model_to_json(model).dump(2) + "\n";
}

std::string serialize_pds(const AbstractPDS& pds) {
  return pds_to_json(pds).dump(2) + "\n";
}

// --------------------------------------------------------------- public: render

std::string render_validation(const ConcreteModel& model, const ValidationReport& report,
                              Format format) {
  if (format == Format::Json) {
    json j;
    j["kind"] = "validation";
    j["model"] = model_to_json(model);
    json checks;
    checks["partial_isometry"] = check_json(report.partial_isometry);
    checks["power_partial_isometry"] = check_json(report.power_partial_isometry);
    checks["delta_compatibility"] = check_json(report.delta_compatibility);
    checks["domain_projection_commutes"] = check_json(report.domain_projection_commutes);
    checks["domain_projection_in_algebra"] = check_json(report.domain_projection_in_algebra);
    checks["intertwining"] = check_json(report.intertwining);
    j["checks"] = checks;
    j["model_valid"] = report.model_valid();
    j["all_ok"] = report.all_ok();
    return j.dump(2) + "\n";
  }

  std::ostringstream out;
  out << "model: " << model_summary(model) << "\n";
  auto line = [&](const char* name, const CheckResult& c) {
    out << "  " << name << std::string(30 - std::string(name).size(), ' ')
        << (c.ok ? "ok" : "FAIL  " + c.witness) << "\n";
  };
  line("partial_isometry", report.partial_isometry);
  line("power_partial_isometry", report.power_partial_isometry);
  line("delta_compatibility", report.delta_compatibility);
  line("domain_projection_commutes", report.domain_projection_commutes);
  line("domain_projection_in_algebra", report.domain_projection_in_algebra);
  line("intertwining", report.intertwining);
  out << "model valid: " << (report.model_valid() ? "yes" : "no") << "\n";
  out << "all checks:  " << (report.all_ok() ? "yes" : "no") << "\n";
  return out.str();
}

std::string render_analysis(const ConcreteModel& model, Format format) {
  OperatorClass cls = classify_operator(model);
  AbstractPDS pds = induced_system(model);
  DeltaLadder ladder = delta_ladder(pds);
  std::optional<DualEndomorphismWitness> dual = dual_endomorphism_case(model);
  bool dom_in_a = domain_is_union_of_blocks(model);

  if (format == Format::Json) {
    json j;
    j["kind"] = "analysis";
    j["operator_class"] = to_string(cls);
    json sys;
    sys["points"] = pds.points;
    sys["domain"] = labels_json(pds, pds.domain);
    json al;
    for (int p : pds.domain)
      al[pds.points[static_cast<size_t>(p)]] = pds.points[static_cast<size_t>(*pds.apply(p))];
    sys["alpha"] = al;
    j["system"] = sys;
    json lad;
    json fw = json::array();
    for (const auto& s : ladder.forward) fw.push_back(labels_json(pds, s));
    json bw = json::array();
    for (const auto& s : ladder.backward) bw.push_back(labels_json(pds, s));
    lad["forward"] = fw;
    lad["backward"] = bw;
    lad["stab_forward"] = ladder.stab_forward;
    lad["stab_backward"] = ladder.stab_backward;
    lad["core"] = labels_json(pds, ladder.core);
    j["ladder"] = lad;
    if (dual) {
      json d;
      json a, ai;
      for (auto [p, q] : dual->alpha_restricted)
        a[pds.points[static_cast<size_t>(p)]] = pds.points[static_cast<size_t>(q)];
      for (auto [p, q] : dual->alpha_inverse)
        ai[pds.points[static_cast<size_t>(p)]] = pds.points[static_cast<size_t>(q)];
      d["alpha"] = a;
      d["alpha_inverse"] = ai;
      j["dual_endomorphism"] = d;
    } else {
      j["dual_endomorphism"] = nullptr;
    }
    j["domain_projection_in_algebra"] = dom_in_a;
    return j.dump(2) + "\n";
  }

  std::ostringstream out;
  out << "model: " << model_summary(model) << "\n";
  out << "operator class: " << to_string(cls) << "\n";
  out << "alpha:";
  if (pds.domain.empty()) out << " (empty domain)";
  for (int p : pds.domain)
    out << " " << pds.points[static_cast<size_t>(p)] << "->"
        << pds.points[static_cast<size_t>(*pds.apply(p))];
  out << "\n";
  for (int n = 0; n <= ladder.stab_forward; ++n)
    out << "Delta_" << n << " = " << labels_str(pds, ladder.forward[static_cast<size_t>(n)])
        << (n == ladder.stab_forward ? "  (stable from here)" : "") << "\n";
  for (int n = 1; n <= ladder.stab_backward; ++n)
    out << "Delta_-" << n << " = " << labels_str(pds, ladder.backward[static_cast<size_t>(n)])
        << (n == ladder.stab_backward ? "  (stable from here)" : "") << "\n";
  out << "core = " << labels_str(pds, ladder.core) << "\n";
  if (dual) {
    out << "dual endomorphism case: yes, alpha restricts to a bijection of "
        << labels_str(pds, ladder.delta(1)) << " onto " << labels_str(pds, ladder.delta(-1))
        << "\n";
  } else {
    out << "dual endomorphism case: no\n";
  }
  out << "domain projection in algebra: " << (dom_in_a ? "yes" : "no") << "\n";
  return out.str();
}

std::string render_spectrum(const AbstractPDS& pds, const DeltaLadder& ladder,
                            const SpectrumDescription& spec, Format format) {
  if (format == Format::Dot) return spectrum_dot(pds, ladder, spec);

  if (format == Format::Json) {
    json j;
    j["kind"] = "spectrum";
    j["points"] = pds.points;
    json fam = families_json(pds, spec.hat);
    j["hat"] = fam["levels"];
    j["hat_tail"] = fam["tail"];
    json minf = json::array();
    for (const auto& c : spec.hat.infinite) minf.push_back(chain_json(pds, c));
    j["m_infinity"] = minf;
    if (spec.upper) j["upper"] = families_json(pds, *spec.upper);
    return j.dump(2) + "\n";
  }

  std::ostringstream out;
  out << "points: " << labels_str(pds, [&] {
    IndexSet all;
    for (int p = 0; p < pds.point_count(); ++p) all.push_back(p);
    return all;
  }()) << "\n";
  auto family_text = [&](const char* name, const SpectrumFamilies& fam) {
    for (const auto& [n, chains] : fam.levels) {
      out << name << " level " << n << ":";
      if (chains.empty()) out << " -";
      for (const auto& c : chains) out << " " << seq_str(pds, c);
      out << "\n";
    }
    out << name << " tail from level " << fam.tail_from << ": ";
    if (fam.tail_roots.empty())
      out << "empty\n";
    else
      out << "roots " << labels_str(pds, fam.tail_roots) << "\n";
  };
  family_text("hat", spec.hat);
  out << "m_infinity:";
  if (spec.hat.infinite.empty()) out << " empty";
  for (const auto& c : spec.hat.infinite) out << " " << seq_str(pds, c);
  out << "\n";
  if (spec.upper) family_text("upper", *spec.upper);
  return out.str();
}

std::string render_oracle(const ConcreteModel& model, const OracleSpectrum& oracle,
                          const CoefficientAxiomReport& axioms, Format format) {
  AbstractPDS pds = induced_system(model);
  const Partition& atoms = oracle.atoms.atoms;

  if (format == Format::Json) {
    json j;
    j["kind"] = "oracle";
    j["model"] = model_to_json(model);
    json at = json::array();
    for (const auto& blk : atoms.blocks()) at.push_back(blk);
    j["atoms"] = at;
    j["generation_depth"] = oracle.atoms.generation_depth;
    json seqs = json::array();
    for (size_t i = 0; i < oracle.sequences.size(); ++i) {
      const CharacterSeq& s = oracle.sequences[i];
      json e;
      e["atom"] = atoms.block(static_cast<int>(i));
      e["type"] = s.is_finite() ? "finite" : "infinite";
      if (s.is_finite()) {
        e["chain"] = labels_json(pds, s.chain());
      } else {
        e["preperiod"] = labels_json(pds, s.preperiod());
        e["period"] = labels_json(pds, s.period());
      }
      seqs.push_back(e);
    }
    j["sequences"] = seqs;
    json ax;
    ax["delta_invariance"] = check_json(axioms.delta_invariance);
    ax["delta_star_invariance"] = check_json(axioms.delta_star_invariance);
    ax["intertwining"] = check_json(axioms.intertwining);
    ax["delta_multiplicative"] = check_json(axioms.delta_multiplicative);
    ax["delta_star_multiplicative"] = check_json(axioms.delta_star_multiplicative);
    ax["all_ok"] = axioms.all_ok();
    j["axioms"] = ax;
    return j.dump(2) + "\n";
  }

  std::ostringstream out;
  out << "model: " << model_summary(model) << "\n";
  out << "atoms (" << oracle.atoms.generation_depth << " refinement rounds):";
  for (const auto& blk : atoms.blocks()) out << " " << index_set_str(blk);
  out << "\n";
  for (size_t i = 0; i < oracle.sequences.size(); ++i) {
    const CharacterSeq& s = oracle.sequences[i];
    out << "character of " << index_set_str(atoms.block(static_cast<int>(i))) << ": "
        << seq_str(pds, s) << (s.is_finite() ? " then zero" : "") << "\n";
  }
  auto ax_line = [&](const char* name, const CheckResult& c) {
    if (!c.ok) out << "axiom " << name << " FAILED: " << c.witness << "\n";
  };
  ax_line("delta_invariance", axioms.delta_invariance);
  ax_line("delta_star_invariance", axioms.delta_star_invariance);
  ax_line("intertwining", axioms.intertwining);
  ax_line("delta_multiplicative", axioms.delta_multiplicative);
  ax_line("delta_star_multiplicative", axioms.delta_star_multiplicative);
  out << "axioms: " << (axioms.all_ok() ? "all ok" : "FAILED") << "\n";
  return out.str();
}

std::string render_verify(const std::vector<TheoremReport>& reports, Format format) {
  bool all = true;
  for (const auto& r : reports) all = all && !r.failed();

  if (format == Format::Json) {
    json j;
    j["kind"] = "verify";
    json rs = json::array();
    for (const auto& r : reports) {
      json e;
      e["theorem"] = r.theorem;
      e["verdict"] = to_string(r.verdict);
      if (!r.witness.empty()) e["witness"] = r.witness;
      if (!r.note.empty()) e["note"] = r.note;
      json st;
      for (const auto& [k, v] : r.stats) st[k] = v;
      e["stats"] = st;
      rs.push_back(e);
    }
    j["reports"] = rs;
    j["all_passed"] = all;
    return j.dump(2) + "\n";
  }

  std::ostringstream out;
  for (const auto& r : reports) {
    out << r.theorem << std::string(r.theorem.size() < 20 ? 20 - r.theorem.size() : 1, ' ')
        << to_string(r.verdict);
    if (r.verdict == Verdict::Fail) out << "  " << r.witness;
    if (r.verdict == Verdict::NotApplicable) out << "  (" << r.note << ")";
    if (r.verdict == Verdict::Pass) {
      for (const auto& [k, v] : r.stats) out << "  " << k << "=" << v;
    }
    out << "\n";
  }
  out << "overall: " << (all ? "pass" : "FAIL") << "\n";
  return out.str();
}

std::string render_fuzz(const FuzzReport& report, Format format) {
  const char* strategy =
      report.config.strategy == FuzzConfig::PartitionStrategy::Singletons
          ? "singletons"
          : "random-compatible";

  if (format == Format::Json) {
    json j;
    j["kind"] = "fuzz";
    json cfg;
    cfg["count"] = report.config.count;
    cfg["max_size"] = report.config.max_size;
    cfg["seed"] = report.config.seed;
    cfg["strategy"] = strategy;
    cfg["granularity"] =
        report.config.granularity == FuzzConfig::Granularity::PerModel ? "per-model"
                                                                       : "summary";
    j["config"] = cfg;
    j["models_run"] = report.models_run;
    j["singleton_fallbacks"] = report.singleton_fallbacks;
    json tl;
    for (const auto& [name, t] : report.tallies) {
      json e;
      e["pass"] = t.pass;
      e["fail"] = t.fail;
      e["not_applicable"] = t.not_applicable;
      tl[name] = e;
    }
    j["tallies"] = tl;
    json strict;
    strict["upper"] = report.upper_strict_models;
    strict["lower"] = report.lower_strict_models;
    strict["both"] = report.both_strict_models;
    j["strict"] = strict;
    j["both_strict_example"] =
        report.both_strict_example ? model_to_json(*report.both_strict_example) : json(nullptr);
    j["minimal_failure"] =
        report.minimal_failure ? model_to_json(*report.minimal_failure) : json(nullptr);
    j["minimal_failure_theorems"] = report.minimal_failure_theorems;
    if (!report.model_lines.empty()) j["models"] = report.model_lines;
    j["all_passed"] = report.all_passed();
    return j.dump(2) + "\n";
  }

  std::ostringstream out;
  out << "fuzz: count=" << report.config.count << " max_size=" << report.config.max_size
      << " seed=" << report.config.seed << " strategy=" << strategy << "\n";
  out << "models run: " << report.models_run
      << "   singleton fallbacks: " << report.singleton_fallbacks << "\n";
  for (const auto& [name, t] : report.tallies)
    out << "  " << name << std::string(name.size() < 20 ? 20 - name.size() : 1, ' ')
        << "pass=" << t.pass << " fail=" << t.fail << " n/a=" << t.not_applicable << "\n";
  out << "strict bounds: upper=" << report.upper_strict_models
      << " lower=" << report.lower_strict_models << " both=" << report.both_strict_models
      << "\n";
  if (report.minimal_failure) {
    out << "minimal failure: " << model_summary(*report.minimal_failure) << " failing={";
    for (size_t i = 0; i < report.minimal_failure_theorems.size(); ++i)
      out << (i ? "," : "") << report.minimal_failure_theorems[i];
    out << "}\n";
  } else {
    out << "minimal failure: none\n";
  }
  for (const auto& line : report.model_lines) out << line << "\n";
  out << "overall: " << (report.all_passed() ? "pass" : "FAIL") << "\n";
  return out.str();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot read file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace coeffspec
