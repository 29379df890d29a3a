#include "qpoincare/verify.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <fstream>
#include <functional>
#include <iomanip>
#include <map>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>

#include <json.hpp>

namespace qpoincare {

std::string statusName(CheckStatus s) {
  switch (s) {
    case CheckStatus::Pass:
      return "pass";
    case CheckStatus::Fail:
      return "fail";
    case CheckStatus::FailWithOverlayPass:
      return "fail-with-overlay-pass";
  }
  return {};
}

CheckStatus parseStatus(const std::string& s) {
  if (s == "pass") return CheckStatus::Pass;
  if (s == "fail") return CheckStatus::Fail;
  if (s == "fail-with-overlay-pass") return CheckStatus::FailWithOverlayPass;
  throw std::invalid_argument("unknown status '" + s + "'");
}

std::vector<std::string> splitCsv(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream in(s);
  for (std::string item; std::getline(in, item, ',');) {
    item.erase(0, item.find_first_not_of(" \t"));
    item.erase(item.find_last_not_of(" \t") + 1);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

// ---------------------------------------------------------------- overlays

bool Overlay::touches(PresentationKind kind) const {
  const std::string name = presentationName(kind);
  return std::any_of(entries.begin(), entries.end(), [&](const OverlayEntry& e) { return e.presentation == name; });
}

namespace {

std::optional<int> momentumIndex(const std::string& name, PresentationKind kind) {
  if (name.size() == 2 && name[0] == 'P' && name[1] >= '0' && name[1] <= '3') return name[1] - '0';
  if (kind == PresentationKind::NullPlane) {
    if (name == "P+") return 0;
    if (name == "P-") return 3;
  }
  return std::nullopt;
}

// Parses the replacement against `context` and checks its type.
Value elaborateEntry(const OverlayEntry& e, const Presentation& context) {
  Value v;
  try {
    v = parse(e.expression, &context);
  } catch (const ParseError& err) {
    throw ParseError(err.what(), e.line, e.exprColumn + err.column() - 1, err.expected());
  } catch (const ElaborationError& err) {
    throw ParseError(err.what(), e.line, e.exprColumn + err.column() - 1);
  }
  auto typeError = [&e](const std::string& msg) { return ParseError(msg, e.line, e.exprColumn); };
  switch (e.kind) {
    case OverlayEntry::Kind::Commutator:
      if (momentumIndex(e.second, context.kind())) {
        if (!std::holds_alternative<Poly>(v)) throw typeError("a letter-momentum commutator must be a coefficient");
      } else {
        if (std::holds_alternative<Poly>(v)) v = unitElement(std::get<Poly>(v));
        if (!std::holds_alternative<Element>(v)) throw typeError("a commutator must be an element");
        if (letterDegree(std::get<Element>(v)) > 1) throw typeError("replacement has letter degree above one");
      }
      break;
    case OverlayEntry::Kind::Coproduct:
      if (std::holds_alternative<Poly>(v)) v = TensorElement({}, std::get<Poly>(v));
      if (!std::holds_alternative<TensorElement>(v)) throw typeError("a coproduct must be a tensor of rank two");
      break;
    case OverlayEntry::Kind::Antipode:
      if (std::holds_alternative<Poly>(v)) v = unitElement(std::get<Poly>(v));
      if (!std::holds_alternative<Element>(v)) throw typeError("an antipode must be an element");
      break;
  }
  return v;
}

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return {};
  return s.substr(a, s.find_last_not_of(" \t\r") - a + 1);
}

}  // namespace

Overlay parseOverlay(const std::string& text, const std::string& source) {
  Overlay overlay;
  overlay.source = source;
  std::map<std::string, std::shared_ptr<const Presentation>> contexts;
  std::istringstream in(text);
  std::size_t lineNo = 0;
  for (std::string raw; std::getline(in, raw);) {
    ++lineNo;
    std::string line = raw.substr(0, raw.find('#'));
    if (trim(line).empty()) continue;
    const bool indented = line[0] == ' ' || line[0] == '\t';
    const std::string body = trim(line);
    if (indented && body.rfind("reason:", 0) == 0) {
      if (overlay.entries.empty()) throw ParseError("reason without an entry", lineNo, 1);
      auto& reason = overlay.entries.back().reason;
      if (!reason.empty()) reason += ' ';
      reason += trim(body.substr(7));
      continue;
    }
    const auto eq = line.find('=');
    std::istringstream head(line.substr(0, eq));
    std::vector<std::string> words;
    for (std::string w; head >> w;) words.push_back(w);

    if (words.empty()) throw ParseError("missing entry kind", lineNo, 1, {"commutator", "coproduct", "antipode"});
    OverlayEntry e;
    e.line = lineNo;
    const std::string& kind = words[0];
    if (kind == "commutator")
      e.kind = OverlayEntry::Kind::Commutator;
    else if (kind == "coproduct")
      e.kind = OverlayEntry::Kind::Coproduct;
    else if (kind == "antipode")
      e.kind = OverlayEntry::Kind::Antipode;
    else
      throw ParseError("unknown entry kind '" + kind + "'", lineNo, line.find_first_not_of(" \t") + 1,
                       {"commutator", "coproduct", "antipode"});
    if (eq == std::string::npos) throw ParseError("missing '='", lineNo, line.size() + 1, {"'='"});
    const std::size_t targets = e.kind == OverlayEntry::Kind::Commutator ? 2 : 1;
    if (words.size() != 2 + targets)
      throw ParseError("expected a presentation and " + std::to_string(targets) + " generator name(s) before '='",
                       lineNo, eq + 1);
    e.presentation = words[1];
    e.first = words[2];
    if (targets == 2) e.second = words[3];

    PresentationKind pk;
    try {
      pk = parsePresentationKind(e.presentation);
    } catch (const UnknownPresentation&) {
      throw UnknownTarget("unknown presentation '" + e.presentation + "'", lineNo);
    }
    auto& ctx = contexts[e.presentation];
    if (!ctx) ctx = buildPresentation(pk, MetricSpec::generic());
    if (!ctx->letterIndex(e.first)) throw UnknownTarget("unknown letter '" + e.first + "'", lineNo);
    if (targets == 2) {
      if (!ctx->letterIndex(e.second) && !momentumIndex(e.second, pk))
        throw UnknownTarget("unknown generator '" + e.second + "'", lineNo);
      if (e.first == e.second) throw UnknownTarget("a letter commutes with itself", lineNo);
    }
    const std::size_t exprStart = line.find_first_not_of(" \t", eq + 1);
    if (exprStart == std::string::npos) throw ParseError("missing expression", lineNo, line.size() + 1, {"expression"});
    e.expression = trim(line.substr(exprStart));
    e.exprColumn = exprStart + 1;
    elaborateEntry(e, *ctx);
    overlay.entries.push_back(std::move(e));
  }
  return overlay;
}

Overlay loadOverlay(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read overlay '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parseOverlay(buf.str(), path);
}

PresentationData applyOverlay(const Overlay& overlay, const PresentationData& data) {
  if (!overlay.touches(data.kind)) return data;
  const Presentation context(data);
  PresentationData out = data;
  for (const auto& e : overlay.entries) {
    if (e.presentation != data.name) continue;
    const Value v = elaborateEntry(e, context);
    const int a = *context.letterIndex(e.first);
    const auto ua = static_cast<std::size_t>(a);
    switch (e.kind) {
      case OverlayEntry::Kind::Commutator:
        if (auto mu = momentumIndex(e.second, data.kind)) {
          out.relations.derivations[ua][static_cast<std::size_t>(*mu)] = std::get<Poly>(v);
        } else {
          const int b = *context.letterIndex(e.second);
          const Element& x = std::get<Element>(v);
          if (a > b)
            out.relations.brackets[ua][static_cast<std::size_t>(b)] = x;
          else
            out.relations.brackets[static_cast<std::size_t>(b)][ua] = -x;
        }
        break;
      case OverlayEntry::Kind::Coproduct:
        out.hopf.coproductLetters[ua] = std::get<TensorElement>(v);
        break;
      case OverlayEntry::Kind::Antipode:
        out.hopf.antipodeLetters[ua] = std::get<Element>(v);
        out.antipodeFromConjugation[ua] = false;
        break;
    }
  }
  return out;
}

// ---------------------------------------------------------------- suite

SuiteConfig normalizeConfig(SuiteConfig c) {
  auto expand = [](std::vector<std::string> items, const std::vector<std::string>& known, const std::string& what) {
    std::vector<std::string> out;
    for (const auto& s : items) {
      if (s == "all") {
        out = known;
        break;
      }
      if (std::find(known.begin(), known.end(), s) == known.end()) throw ConfigError("unknown " + what + " '" + s + "'");
      if (std::find(out.begin(), out.end(), s) == out.end()) out.push_back(s);
    }
    // keep the canonical order
    std::vector<std::string> ordered;
    for (const auto& k : known)
      if (std::find(out.begin(), out.end(), k) != out.end()) ordered.push_back(k);
    return ordered;
  };
  if (c.checks.empty()) throw ConfigError("no checks selected");
  c.checks = expand(c.checks, checkNames(), "check");
  c.presentations = expand(c.presentations, presentationNames(), "presentation");
  if (c.maps.size() == 1 && c.maps[0] == "none")
    c.maps.clear();
  else
    c.maps = expand(c.maps, mapNames(), "map");
  try {
    MetricSpec::byName(c.metric);
  } catch (const MetricError& e) {
    throw ConfigError(e.what());
  }
  if (c.jobs == 0) c.jobs = 1;
  return c;
}

namespace {

using PresPtr = std::shared_ptr<const Presentation>;

struct Task {
  std::string id;
  std::string target;
  std::function<std::string()> run;
};

// Presentations and maps of one configuration, with or without the overlay.
class World {
 public:
  World(const MetricSpec& metric, const Overlay* overlay) : metric_(metric), overlay_(overlay) {}

  PresPtr presentation(PresentationKind kind, const MetricSpec& metric) {
    const std::string key = presentationName(kind) + "|" + metric.name();
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
    PresentationData data = presentationData(kind, metric);
    if (overlay_) data = applyOverlay(*overlay_, data);
    return cache_[key] = std::make_shared<const Presentation>(std::move(data));
  }
  PresPtr presentation(PresentationKind kind) { return presentation(kind, metric_); }

  /// Null when the inverse could not be built; the reason is in `error`.
  std::shared_ptr<const PresentationMap> map(const std::string& name, std::string& error) {
    auto [src, tgt] = mapEndpoints(name);
    const bool sameMetric = name == "basis-change";
    const MetricSpec light = MetricSpec::nullPlane();
    PresPtr s = presentation(src, sameMetric ? metric_ : light);
    PresPtr t = presentation(tgt, sameMetric ? metric_ : light);
    try {
      return std::make_shared<const PresentationMap>(buildMap(name, metric_, s, t));
    } catch (const NotTriangular& e) {
      error = e.what();
      return nullptr;
    }
  }

 private:
  MetricSpec metric_;
  const Overlay* overlay_;
  std::map<std::string, PresPtr> cache_;
};

std::vector<Generator> letterGenerators() {
  std::vector<Generator> g;
  for (int l = 0; l < kLetters; ++l) g.push_back(Generator::letter(l));
  return g;
}

std::vector<Generator> algebraGenerators() {
  auto g = letterGenerators();
  for (int mu = 0; mu < 4; ++mu) g.push_back(Generator::momentum(mu));
  return g;
}

std::string joinNames(const Presentation& p, std::initializer_list<Generator> gens) {
  std::string s;
  for (const auto& g : gens) s += (s.empty() ? "" : ",") + p.generatorName(g);
  return s;
}

template <class T>
std::string residualText(const T& r, const Presentation& p) {
  return r.isZero() ? std::string() : format(r, p);
}

void jacobiTasks(const PresPtr& p, std::vector<Task>& out) {
  const auto letters = letterGenerators();
  std::vector<Generator> coeffs;
  for (int mu = 0; mu < 4; ++mu) coeffs.push_back(Generator::momentum(mu));
  coeffs.push_back(Generator::groupLike());
  auto add = [&](Generator a, Generator b, Generator c) {
    out.push_back({"jacobi/" + p->name() + "/" + joinNames(*p, {a, b, c}), p->name(),
                   [p, a, b, c] { return residualText(p->algebra().jacobi(a, b, c), *p); }});
  };
  for (int a = 0; a < kLetters; ++a)
    for (int b = a; b < kLetters; ++b) {
      for (int c = b; c < kLetters; ++c) add(letters[a], letters[b], letters[c]);
      for (const auto& c : coeffs) add(letters[a], letters[b], c);
    }
}

void hopfTasks(const PresPtr& p, std::vector<Task>& out) {
  const std::string base = "hopf/" + p->name() + "/";
  for (const auto& g : algebraGenerators()) {
    const std::string gn = p->generatorName(g);
    out.push_back({base + "coassoc/" + gn, p->name(), [p, g] {
                     return residualText(coassociativityResidual(p->context(), g), *p);
                   }});
    const std::pair<Axiom, const char*> axioms[] = {{Axiom::CounitLeft, "counit-left"},
                                                    {Axiom::CounitRight, "counit-right"},
                                                    {Axiom::AntipodeLeft, "antipode-left"},
                                                    {Axiom::AntipodeRight, "antipode-right"}};
    for (const auto& [ax, name] : axioms)
      out.push_back({base + name + "/" + gn, p->name(),
                     [p, g, ax = ax] { return residualText(axiomResidual(p->context(), ax, g), *p); }});
  }
  out.push_back({base + "grouplike/E", p->name(), [p] {
                   const auto h = p->context();
                   const Element e = Generator::groupLike().element();
                   const TensorElement want({Monomial{}, Monomial{}},
                                            Poly::variable(var::E(0)) * Poly::variable(var::E(1)));
                   std::string r;
                   if (auto d = coproduct(h, e) - want; !d.isZero()) r += "delta: " + format(d, *p);
                   if (auto c = counit(h, e) - Poly(1); !c.isZero()) r += (r.empty() ? "" : "; ") + std::string("counit: ") + format(c, p.get());
                   if (auto s = antipode(h, e) - unitElement(Poly::variable(var::E(), -1)); !s.isZero())
                     r += (r.empty() ? "" : "; ") + std::string("antipode: ") + format(s, *p);
                   return r;
                 }});
}

void deltaTasks(const PresPtr& p, std::vector<Task>& out) {
  for (const auto& rel : p->relations()) {
    out.push_back({"delta/" + p->name() + "/" + rel.id, p->name(), [p, &rel] {
                     const auto h = p->context();
                     const TensorElement lhs =
                         tensorCommutator(p->algebra(), coproduct(h, rel.a.element()), coproduct(h, rel.b.element()));
                     return residualText(lhs - coproduct(h, rel.rhs), *p);
                   }});
  }
}

void antimorphismTasks(const PresPtr& p, std::vector<Task>& out) {
  for (const auto& rel : p->relations()) {
    out.push_back({"antipode-anti/" + p->name() + "/" + rel.id, p->name(), [p, &rel] {
                     const auto h = p->context();
                     const Element sa = antipode(h, rel.a.element()), sb = antipode(h, rel.b.element());
                     // S([a, b]) = [S(b), S(a)]
                     return residualText(p->algebra().commutator(sb, sa) - antipode(h, rel.rhs), *p);
                   }});
  }
}

void antipodeFormTasks(const PresPtr& p, std::vector<Task>& out) {
  if (!p->hopf().conjugationExponent) return;
  for (int l = 0; l < kLetters; ++l) {
    out.push_back({"antipode-form/" + p->name() + "/" + p->letterNames()[static_cast<std::size_t>(l)], p->name(),
                   [p, l] {
                     const Poly& alpha = *p->hopf().conjugationExponent;
                     const Element x = letterElement(l);
                     const Element table = p->hopf().antipodeLetters[static_cast<std::size_t>(l)];
                     const Element viaSeries = -p->algebra().conjExp(alpha, x);
                     // exp(r z P0) = E^r, multiplied out directly
                     const int r = static_cast<int>(alpha.terms()[0].second.re.num());
                     const Algebra& A = p->algebra();
                     const Element viaProduct =
                         -A.multiply(A.multiply(unitElement(enc::exp(r)), x), unitElement(enc::exp(-r)));
                     std::string out;
                     if (auto d = table - viaSeries; !d.isZero()) out += "series: " + format(d, *p);
                     if (auto d = table - viaProduct; !d.isZero())
                       out += (out.empty() ? "" : "; ") + std::string("product: ") + format(d, *p);
                     return out;
                   }});
  }
}

void mapTasks(World& world, const std::string& name, std::vector<Task>& out) {
  std::string error;
  auto pm = world.map(name, error);
  const std::string base = "map/" + name + "/";
  if (!pm) {
    out.push_back({base + "inverse", name, [error] { return "not invertible: " + error; }});
    return;
  }
  const PresPtr src = pm->source, tgt = pm->target;
  for (const auto& rel : src->relations()) {
    out.push_back({base + "relation/" + rel.id, name, [pm, &rel] {
                     const Element lhs = pm->target->algebra().commutator(pm->apply(rel.a.element()),
                                                                          pm->apply(rel.b.element()));
                     return residualText(lhs - pm->apply(rel.rhs), *pm->target);
                   }});
  }
  for (const auto& g : algebraGenerators()) {
    const std::string gn = src->generatorName(g);
    out.push_back({base + "delta/" + gn, name, [pm, g] {
                     const TensorElement lhs = coproduct(pm->target->context(), pm->apply(g.element()));
                     const TensorElement rhs = applyMapTensor(pm->forward, pm->target->algebra(),
                                                              coproduct(pm->source->context(), g.element()));
                     return residualText(lhs - rhs, *pm->target);
                   }});
    out.push_back({base + "counit/" + gn, name, [pm, g] {
                     const Poly r = counit(pm->target->context(), pm->apply(g.element())) -
                                    counit(pm->source->context(), g.element());
                     return r.isZero() ? std::string() : format(r, pm->target.get());
                   }});
    out.push_back({base + "antipode/" + gn, name, [pm, g] {
                     const Element lhs = antipode(pm->target->context(), pm->apply(g.element()));
                     const Element rhs = pm->apply(antipode(pm->source->context(), g.element()));
                     return residualText(lhs - rhs, *pm->target);
                   }});
  }
  auto all = algebraGenerators();
  all.push_back(Generator::groupLike());
  for (const auto& g : all) {
    out.push_back({base + "roundtrip/" + src->generatorName(g), name, [pm, g] {
                     return residualText(pm->applyInverse(pm->apply(g.element())) - g.element(), *pm->source);
                   }});
    out.push_back({base + "roundtrip-inverse/" + tgt->generatorName(g), name, [pm, g] {
                     return residualText(pm->apply(pm->applyInverse(g.element())) - g.element(), *pm->target);
                   }});
  }
}

std::vector<Task> buildTasks(World& world, const SuiteConfig& c) {
  std::vector<Task> tasks;
  auto wants = [&c](const char* check) { return std::find(c.checks.begin(), c.checks.end(), check) != c.checks.end(); };
  for (const auto& name : c.presentations) {
    const PresPtr p = world.presentation(parsePresentationKind(name));
    if (wants("jacobi")) jacobiTasks(p, tasks);
    if (wants("hopf-axioms")) hopfTasks(p, tasks);
    if (wants("delta-morphism")) deltaTasks(p, tasks);
    if (wants("antipode-antimorphism")) antimorphismTasks(p, tasks);
    if (wants("antipode-equivalence")) antipodeFormTasks(p, tasks);
  }
  if (wants("map-morphism"))
    for (const auto& m : c.maps) mapTasks(world, m, tasks);
  return tasks;
}

std::vector<CheckResult> runTasks(const std::vector<Task>& tasks, unsigned jobs, bool timings) {
  std::vector<CheckResult> results(tasks.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k; (k = next.fetch_add(1)) < tasks.size();) {
      const auto t0 = std::chrono::steady_clock::now();
      std::string residual;
      try {
        residual = tasks[k].run();
      } catch (const std::exception& e) {
        residual = std::string("error: ") + e.what();
      }
      CheckResult& r = results[k];
      r.id = tasks[k].id;
      r.target = tasks[k].target;
      r.status = residual.empty() ? CheckStatus::Pass : CheckStatus::Fail;
      r.residual = std::move(residual);
      if (timings)
        r.ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0).count();
    }
  };
  std::vector<std::thread> pool;
  for (unsigned j = 1; j < jobs; ++j) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  return results;
}

std::string joinCsv(const std::vector<std::string>& v) {
  std::string s;
  for (const auto& x : v) s += (s.empty() ? "" : ",") + x;
  return s.empty() ? "none" : s;
}

}  // namespace

Report runSuite(const SuiteConfig& raw) {
  const SuiteConfig c = normalizeConfig(raw);
  const MetricSpec metric = MetricSpec::byName(c.metric);

  Report report;
  report.config = {{"presentations", joinCsv(c.presentations)},
                   {"metric", c.metric},
                   {"checks", joinCsv(c.checks)},
                   {"maps", joinCsv(c.maps)},
                   {"overlay", c.overlay ? c.overlay->source : "none"},
                   {"accept_overlay", c.acceptOverlay ? "true" : "false"}};

  World plain(metric, nullptr);
  std::vector<CheckResult> base = runTasks(buildTasks(plain, c), c.jobs, c.timings);

  if (c.overlay && !c.overlay->entries.empty()) {
    World overlaid(metric, &*c.overlay);
    std::vector<CheckResult> alt = runTasks(buildTasks(overlaid, c), c.jobs, c.timings);
    std::map<std::string, CheckResult> altById;
    for (auto& r : alt) altById.emplace(r.id, std::move(r));
    for (auto& r : base) {
      auto it = altById.find(r.id);
      if (it == altById.end()) continue;
      const CheckResult& o = it->second;
      if (r.status == CheckStatus::Fail && o.status == CheckStatus::Pass) {
        r.status = CheckStatus::FailWithOverlayPass;
      } else if (r.status == CheckStatus::Pass && o.status == CheckStatus::Fail) {
        r.status = CheckStatus::Fail;
        r.residual = "with overlay: " + o.residual;
      }
      altById.erase(it);
    }
    // checks that exist only in the overlaid configuration
    for (auto& [id, r] : altById) {
      if (r.status == CheckStatus::Fail) r.residual = "with overlay: " + r.residual;
      base.push_back(std::move(r));
    }
  }

  std::sort(base.begin(), base.end(), [](const CheckResult& a, const CheckResult& b) { return a.id < b.id; });
  for (const auto& r : base) {
    switch (r.status) {
      case CheckStatus::Pass:
        ++report.summary.pass;
        break;
      case CheckStatus::Fail:
        ++report.summary.fail;
        break;
      case CheckStatus::FailWithOverlayPass:
        ++report.summary.overlay;
        break;
    }
  }
  report.checks = std::move(base);
  return report;
}

int exitCode(const Report& report, bool acceptOverlay) {
  if (report.summary.fail > 0) return 1;
  if (report.summary.overlay > 0 && !acceptOverlay) return 1;
  return 0;
}

// ---------------------------------------------------------------- emission

namespace {

using ojson = nlohmann::ordered_json;

ojson toJson(const Report& r) {
  ojson j;
  j["version"] = r.version;
  ojson config = ojson::object();
  for (const auto& [k, v] : r.config) config[k] = v;
  j["config"] = config;
  ojson checks = ojson::array();
  for (const auto& c : r.checks)
    checks.push_back(
        {{"id", c.id}, {"target", c.target}, {"status", statusName(c.status)}, {"residual", c.residual}, {"ms", c.ms}});
  j["checks"] = checks;
  j["summary"] = {{"pass", r.summary.pass}, {"fail", r.summary.fail}, {"overlay", r.summary.overlay}};
  return j;
}

std::string summaryLine(const Summary& s) {
  std::string line = std::to_string(s.pass) + " passed, " + std::to_string(s.fail) + " failed";
  if (s.overlay > 0) line += ", " + std::to_string(s.overlay) + " failed as printed but pass with the overlay";
  return line;
}

}  // namespace

void emitReport(const Report& report, ReportFormat format, std::ostream& out) {
  if (format == ReportFormat::Json) {
    out << toJson(report).dump(2) << '\n';
    return;
  }
  out << "verify " << report.version << '\n';
  for (const auto& [k, v] : report.config) out << "  " << k << ": " << v << '\n';
  std::size_t width = 0;
  for (const auto& c : report.checks) width = std::max(width, c.id.size());
  const bool showMs = std::any_of(report.checks.begin(), report.checks.end(), [](const CheckResult& c) { return c.ms; });
  for (const auto& c : report.checks) {
    const char* label = c.status == CheckStatus::Pass ? "pass" : c.status == CheckStatus::Fail ? "FAIL" : "OVERLAY";
    std::ostringstream line;
    line << std::left << std::setw(8) << label << std::setw(static_cast<int>(width)) << c.id;
    if (showMs) line << "  " << std::right << std::setw(6) << c.ms << " ms";
    if (!c.residual.empty()) line << "  " << c.residual;
    std::string s = line.str();
    s.erase(s.find_last_not_of(' ') + 1);
    out << s << '\n';
  }
  out << summaryLine(report.summary) << '\n';
}

void emitReport(const Report& report, ReportFormat format, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write report to '" + path + "'");
  emitReport(report, format, out);
  out.flush();
  if (!out) throw std::runtime_error("failed while writing report to '" + path + "'");
}

Report reportFromJson(const std::string& text) {
  const ojson j = ojson::parse(text);
  Report r;
  r.version = j.at("version").get<std::string>();
  for (const auto& [k, v] : j.at("config").items()) r.config.emplace_back(k, v.get<std::string>());
  for (const auto& c : j.at("checks"))
    r.checks.push_back({c.at("id").get<std::string>(), c.at("target").get<std::string>(),
                        parseStatus(c.at("status").get<std::string>()), c.at("residual").get<std::string>(),
                        c.at("ms").get<std::int64_t>()});
  const auto& s = j.at("summary");
  r.summary = {s.at("pass").get<int>(), s.at("fail").get<int>(), s.at("overlay").get<int>()};
  return r;
}

}  // namespace qpoincare
