#include "cli.hpp"

#include <fstream>
#include <functional>
#include <map>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "stallings/stallings.hpp"

namespace stk {

namespace {

using json = nlohmann::json;
using namespace stallings;

struct Options {
  std::size_t rank = 2;
  std::uint64_t seed = 0;
  std::size_t cap_vertices = 0;  // 0: per-verb default
  bool json = false;
  std::string dot;
  std::string gens, gens2, aut, word, u, v, avoid, relators, subgroup;
  std::vector<std::string> cosets;
  std::size_t k = 0, trials = 1000, max_layers = 64;
  bool rank_given = false;
};

struct Result {
  int code = kOk;
  std::vector<std::string> lines;
  json data = json::object();
  std::string dot;
};

class Context {
 public:
  explicit Context(Options& o) : o_(o) {}

  const Options& options() const { return o_; }

  Alphabet alphabet() {
    load_automaton();
    return Alphabet(o_.rank);
  }

  Word word(const std::string& text) { return parse_word(text, alphabet()); }
  std::vector<Word> words(const std::string& text) { return parse_words(text, alphabet()); }

  // -g, or --aut if given.
  SubgroupHandle first() {
    load_automaton();
    if (aut_) return SubgroupHandle(*aut_);
    require(o_.gens, "-g");
    return stallings::stallings(alphabet(), words(o_.gens));
  }

  SubgroupHandle second() {
    require(o_.gens2, "-G");
    return stallings::stallings(alphabet(), words(o_.gens2));
  }

  static void require(const std::string& value, const char* flag) {
    if (value.empty()) throw InvalidInput(std::string("missing ") + flag);
  }

 private:
  void load_automaton() {
    if (o_.aut.empty() || aut_) return;
    std::ifstream in(o_.aut);
    if (!in) throw InvalidInput("cannot read " + o_.aut);
    std::stringstream ss;
    ss << in.rdbuf();
    aut_ = from_text(ss.str());
    if (o_.rank_given && aut_->alphabet().rank != o_.rank) {
      throw InvalidInput("automaton rank " + std::to_string(aut_->alphabet().rank) + " does not match -n " +
                         std::to_string(o_.rank));
    }
    o_.rank = aut_->alphabet().rank;
    aut_->validate();
  }

  Options& o_;
  std::optional<InvAutomaton> aut_;
};

std::string fmt(const std::vector<Word>& ws, const Alphabet& a) { return format_words(ws, a); }

json words_json(const std::vector<Word>& ws, const Alphabet& a) {
  json j = json::array();
  for (const Word& w : ws) j.push_back(format_word(w, a));
  return j;
}

void describe(Result& r, const SubgroupHandle& h, const std::string& key = "subgroup") {
  const Alphabet& a = h.alphabet();
  auto b = basis(h);
  r.lines.push_back(fmt(b, a));
  r.data[key] = {{"basis", words_json(b, a)},
                 {"rank", h.rank()},
                 {"vertices", h.size()},
                 {"automaton", to_text(h.automaton())}};
}

Result boolean(bool value, const std::string& key = "value") {
  Result r;
  r.code = value ? kOk : kFalse;
  r.lines.push_back(value ? "true" : "false");
  r.data[key] = value;
  return r;
}

std::size_t cap_or(const Options& o, std::size_t fallback) { return o.cap_vertices ? o.cap_vertices : fallback; }

// ---- verbs --------------------------------------------------------------

Result cmd_fold(Context& c) {
  SubgroupHandle h = c.first();
  Result r;
  std::string text = to_text(h.automaton());
  text.pop_back();
  r.lines.push_back(text);
  r.data = {{"automaton", to_text(h.automaton())}, {"vertices", h.size()}, {"rank", h.rank()},
            {"loss", c.options().gens.empty() ? 0 : loss(h.alphabet(), c.words(c.options().gens))}};
  r.dot = to_dot(h.automaton());
  return r;
}

Result cmd_basis(Context& c) {
  SubgroupHandle h = c.first();
  Result r;
  describe(r, h);
  r.dot = to_dot(h.automaton());
  return r;
}

Result cmd_express(Context& c) {
  Context::require(c.options().gens, "-g");
  auto S = c.words(c.options().gens);
  auto e = express(c.alphabet(), c.word(c.options().word), S);
  Result r;
  if (!e) {
    r.code = kFalse;
    r.lines.push_back("not a member");
    r.data["expression"] = nullptr;
    return r;
  }
  r.lines.push_back(format_generator_word(*e));
  r.data["expression"] = format_generator_word(*e);
  return r;
}

Result cmd_relations(Context& c) {
  Context::require(c.options().gens, "-g");
  auto rels = relations(c.alphabet(), c.words(c.options().gens));
  Result r;
  r.data["relations"] = json::array();
  for (const auto& g : rels) {
    r.lines.push_back(format_generator_word(g));
    r.data["relations"].push_back(format_generator_word(g));
  }
  return r;
}

Result cmd_member(Context& c) {
  Context::require(c.options().word, "-w");
  return boolean(is_member(c.word(c.options().word), c.first()), "member");
}

Result cmd_index(Context& c) {
  SubgroupHandle h = c.first();
  IndexReport rep = index(h);
  Result r;
  r.data["finite"] = rep.finite;
  if (!rep.finite) {
    r.lines.push_back("infinite");
    r.data["index"] = nullptr;
    return r;
  }
  r.lines.push_back("finite " + std::to_string(rep.index));
  for (const Word& t : rep.transversal) r.lines.push_back(format_word(t, h.alphabet()));
  r.data["index"] = rep.index;
  r.data["transversal"] = words_json(rep.transversal, h.alphabet());
  return r;
}

Result cmd_normal(Context& c) { return boolean(is_normal(c.first()), "normal"); }

Result cmd_normalizer(Context& c) {
  Result r;
  describe(r, normalizer(c.first()), "normalizer");
  return r;
}

Result cmd_conjugate(Context& c) {
  SubgroupHandle h = c.first();
  Result r;
  if (!c.options().word.empty()) {
    describe(r, conjugate(h, c.word(c.options().word)), "conjugate");
    return r;
  }
  auto w = are_conjugate(h, c.second());
  r.data["conjugate"] = w.has_value();
  if (!w) {
    r.code = kFalse;
    r.lines.push_back("false");
    return r;
  }
  r.lines.push_back(format_word(*w, h.alphabet()));
  r.data["conjugator"] = format_word(*w, h.alphabet());
  return r;
}

Result cmd_corank(Context& c) {
  Result r;
  std::size_t v = corank(c.first());
  r.lines.push_back(std::to_string(v));
  r.data["corank"] = v;
  return r;
}

Result cmd_complete(Context& c) {
  SubgroupHandle h = c.first();
  std::vector<Word> avoid = c.options().avoid.empty() ? std::vector<Word>{} : c.words(c.options().avoid);
  SubgroupHandle k = hall_complete(h, avoid);
  Result r;
  describe(r, k, "completion");
  std::size_t idx = index(k).index;
  r.lines.push_back("index " + std::to_string(idx));
  r.data["index"] = idx;
  r.dot = to_dot(k.automaton());
  return r;
}

Result cmd_whitehead(Context& c) {
  Context::require(c.options().gens, "-g");
  bool passes = whitehead_cut_test(c.alphabet(), c.words(c.options().gens)) == WhiteheadVerdict::passes;
  Result r;
  r.code = passes ? kOk : kFalse;
  r.lines.push_back(passes ? "passes" : "fails");
  r.data["verdict"] = passes ? "passes" : "fails";
  return r;
}

Result cmd_commensurable(Context& c) { return boolean(commensurable(c.first(), c.second()), "commensurable"); }

Result cmd_intersect(Context& c) {
  SubgroupHandle h = c.first(), k = c.second();
  Result r;
  describe(r, intersect(h, k), "intersection");
  r.dot = to_dot(pullback(h, k));
  return r;
}

Result cmd_coset_intersect(Context& c) {
  SubgroupHandle h = c.first(), k = c.second();
  auto m = coset_intersect(h, c.word(c.options().u), k, c.word(c.options().v));
  Result r;
  r.data["empty"] = !m.has_value();
  if (!m) {
    r.code = kFalse;
    r.lines.push_back("empty");
    return r;
  }
  r.lines.push_back("representative " + format_word(m->representative, h.alphabet()));
  r.data["representative"] = format_word(m->representative, h.alphabet());
  describe(r, m->subgroup, "intersection");
  return r;
}

Result cmd_malnormal(Context& c) {
  SubgroupHandle h = c.first();
  MalnormalReport m = is_malnormal(h);
  Result r = boolean(m.malnormal, "malnormal");
  if (m.witness) {
    r.lines.push_back("witness " + format_word(*m.witness, h.alphabet()));
    r.data["witness"] = format_word(*m.witness, h.alphabet());
  }
  return r;
}

Result cmd_shnc(Context& c) {
  ShncReport s = shnc_check(c.first(), c.second());
  Result r;
  r.code = s.howson_ok && s.shnc_ok ? kOk : kFalse;
  r.lines.push_back("rr_h " + std::to_string(s.rr_h) + " rr_k " + std::to_string(s.rr_k) + " rr_meet " +
                    std::to_string(s.rr_meet) + " component_sum " + std::to_string(s.component_sum));
  r.lines.push_back(std::string("howson ") + (s.howson_ok ? "ok" : "violated") + " shnc " +
                    (s.shnc_ok ? "ok" : "violated"));
  r.data = {{"rr_h", s.rr_h}, {"rr_k", s.rr_k}, {"rr_meet", s.rr_meet}, {"component_sum", s.component_sum},
            {"howson_ok", s.howson_ok}, {"shnc_ok", s.shnc_ok}};
  return r;
}

Result list_of(const std::vector<SubgroupHandle>& hs, const std::string& key, bool dumps) {
  Result r;
  r.data[key] = json::array();
  for (const SubgroupHandle& h : hs) {
    auto b = basis(h);
    r.lines.push_back(fmt(b, h.alphabet()));
    if (dumps) {
      std::string text = to_text(h.automaton());
      text.pop_back();
      r.lines.push_back(text);
    }
    r.data[key].push_back({{"basis", words_json(b, h.alphabet())}, {"automaton", to_text(h.automaton())}});
  }
  return r;
}

Result cmd_fringe(Context& c) {
  return list_of(fringe(c.first(), cap_or(c.options(), kDefaultFringeCap)), "fringe", true);
}

Result cmd_free_factor(Context& c) { return boolean(is_free_factor(c.first(), c.second()), "free_factor"); }

Result cmd_algext(Context& c) {
  return list_of(algebraic_extensions(c.first(), cap_or(c.options(), kDefaultFringeCap)), "algebraic_extensions",
                 false);
}

Result cmd_takahasi(Context& c) {
  Result r;
  describe(r, takahasi_closure(c.first(), c.second(), cap_or(c.options(), kDefaultFringeCap)), "closure");
  return r;
}

Result cmd_compression(Context& c) {
  Compression comp = compression(c.first(), cap_or(c.options(), kDefaultFringeCap));
  Result r;
  r.lines.push_back("dc " + std::to_string(comp.num) + "/" + std::to_string(comp.den));
  r.data["dc"] = {comp.num, comp.den};
  r.data["compressed"] = comp.compressed();
  describe(r, comp.witness, "witness");
  return r;
}

Result cmd_order(Context& c) {
  Context::require(c.options().word, "-w");
  std::size_t k = relative_order(c.word(c.options().word), c.first(), c.word(c.options().u));
  Result r;
  r.lines.push_back(std::to_string(k));
  r.data["order"] = k;
  return r;
}

Result cmd_roots(Context& c) {
  Context::require(c.options().word, "-w");
  Alphabet a = c.alphabet();
  Result r;
  r.data["roots"] = json::array();
  for (const auto& [root, k] : element_roots(c.word(c.options().word), a)) {
    r.lines.push_back(format_word(root, a) + " " + std::to_string(k));
    r.data["roots"].push_back({{"root", format_word(root, a)}, {"exponent", k}});
  }
  return r;
}

Result cmd_spectrum(Context& c) {
  SpectrumReport s = spectrum(c.first(), c.word(c.options().u));
  std::vector<std::size_t> all;
  if (s.has_zero) all.push_back(0);
  all.insert(all.end(), s.orders.begin(), s.orders.end());
  std::string line;
  for (std::size_t k : all) line += (line.empty() ? "" : " ") + std::to_string(k);
  Result r;
  r.lines.push_back(line);
  r.data["spectrum"] = all;
  return r;
}

Result cmd_pure(Context& c) { return boolean(is_pure(c.first()), "pure"); }

Result cmd_pure_closure(Context& c) {
  PureClosure pc = pure_closure(c.first());
  Result r;
  describe(r, pc.result, "closure");
  r.lines.push_back("iterations " + std::to_string(pc.iterations));
  r.data["iterations"] = pc.iterations;
  return r;
}

Result cmd_hall_count(Context& c) {
  std::string v = hall_count(c.options().k, c.alphabet().rank).str();
  Result r;
  r.lines.push_back(v);
  r.data["count"] = v;
  return r;
}

Result cmd_enumerate(Context& c) {
  EnumerationCaps caps;
  if (c.options().cap_vertices) caps.max_k = c.options().cap_vertices;
  return list_of(enumerate_index(c.options().k, c.alphabet().rank, caps), "subgroups", false);
}

Result cmd_sample(Context& c) {
  if (c.options().k == 0) throw InvalidInput("missing -k");
  SubgroupHandle h = sample_subgroup(c.options().k, c.alphabet().rank, c.options().seed);
  Result r;
  std::string text = to_text(h.automaton());
  text.pop_back();
  r.lines.push_back(text);
  r.data = {{"automaton", to_text(h.automaton())}, {"rank", h.rank()}, {"vertices", h.size()}};
  r.dot = to_dot(h.automaton());
  return r;
}

Result cmd_stats(Context& c) {
  if (c.options().k == 0) throw InvalidInput("missing -k");
  SampleStats s = rank_stats(c.options().k, c.alphabet().rank, c.options().trials, c.options().seed);
  Result r;
  r.lines.push_back(stats_csv_header());
  r.lines.push_back(stats_csv_row(s));
  r.data = {{"k", s.k},
            {"n", s.n},
            {"trials", s.trials},
            {"rejections", s.rejections},
            {"mean_rank", s.mean_rank},
            {"predicted_rank", s.predicted_rank()},
            {"mean_size", s.mean_size},
            {"purity_freq", s.purity_freq()},
            {"purity_undetermined", s.purity_undetermined},
            {"malnormal_freq", s.malnormal_freq()},
            {"rng", s.rng}};
  return r;
}

Result cmd_partition_check(Context& c) {
  if (c.options().cosets.empty()) throw InvalidInput("missing --coset");
  std::vector<std::pair<SubgroupHandle, Word>> cosets;
  for (const std::string& spec : c.options().cosets) {
    auto colon = spec.find(':');
    std::string gens = spec.substr(0, colon);
    std::string rep = colon == std::string::npos ? "" : spec.substr(colon + 1);
    cosets.emplace_back(stallings::stallings(c.alphabet(), c.words(gens)), c.word(rep));
  }
  PartitionReport p = partition_check(cosets);
  Result r;
  r.code = p.verdict == PartitionVerdict::not_partition ? kFalse : kOk;
  r.lines.push_back(to_string(p.verdict));
  r.data["verdict"] = to_string(p.verdict);
  r.data["indices"] = p.indices;
  return r;
}

Result cmd_tc(Context& c) {
  Alphabet a = c.alphabet();
  Presentation p(a, c.options().relators.empty() ? std::vector<Word>{} : c.words(c.options().relators));
  std::vector<Word> S = c.options().subgroup.empty() ? std::vector<Word>{} : c.words(c.options().subgroup);
  TcOptions opt;
  opt.max_layers = c.options().max_layers;
  if (c.options().cap_vertices) opt.max_vertices = c.options().cap_vertices;
  TcResult t = todd_coxeter(p, S, opt);
  Result r;
  r.data["layers"] = t.layers;
  if (t.timed_out()) {
    r.code = kResourceLimit;
    r.lines.push_back("timeout after " + std::to_string(t.layers) + " layers");
    r.data["timeout"] = true;
    return r;
  }
  r.lines.push_back("index " + std::to_string(t.table->index));
  r.lines.push_back(fmt(t.table->transversal, a));
  std::string text = to_text(t.table->automaton);
  text.pop_back();
  r.lines.push_back(text);
  r.data["timeout"] = false;
  r.data["index"] = t.table->index;
  r.data["transversal"] = words_json(t.table->transversal, a);
  r.data["table"] = to_text(t.table->automaton);
  r.dot = to_dot(t.table->automaton);
  return r;
}

struct Verb {
  const char* name;
  const char* help;
  const char* flags;  // option keys, see add_flags
  Result (*fn)(Context&);
};

const Verb kVerbs[] = {
    {"fold", "Stallings automaton of <S>", "gA", cmd_fold},
    {"basis", "free basis from the BFS spanning tree", "gA", cmd_basis},
    {"express", "write -w as a product of the generators", "gw", cmd_express},
    {"relations", "relators among the generators", "g", cmd_relations},
    {"member", "is -w in <S>", "gAw", cmd_member},
    {"index", "index and transversal", "gA", cmd_index},
    {"normal", "is <S> normal", "gA", cmd_normal},
    {"normalizer", "normalizer of <S>", "gA", cmd_normalizer},
    {"conjugate", "conjugator from <S> to <S2>, or <S>^w with -w", "gAGw", cmd_conjugate},
    {"corank", "extra generators needed to reach the whole group", "gA", cmd_corank},
    {"complete", "finite-index completion avoiding --avoid", "gAa", cmd_complete},
    {"whitehead", "Whitehead cut-vertex test on S", "g", cmd_whitehead},
    {"commensurable", "are <S> and <S2> commensurable", "gAG", cmd_commensurable},
    {"intersect", "<S> meet <S2>", "gAG", cmd_intersect},
    {"coset-intersect", "<S>u meet <S2>v", "gAGuv", cmd_coset_intersect},
    {"malnormal", "is <S> malnormal", "gA", cmd_malnormal},
    {"shnc-check", "Howson and strengthened Hanna Neumann bounds", "gAG", cmd_shnc},
    {"fringe", "fringe of <S>", "gA", cmd_fringe},
    {"free-factor", "is <S> a free factor of <S2>", "gAG", cmd_free_factor},
    {"algext", "algebraic extensions of <S>", "gA", cmd_algext},
    {"takahasi", "Takahasi closure of <S> in <S2>", "gAG", cmd_takahasi},
    {"compression", "degree of compression", "gA", cmd_compression},
    {"order", "order of -w relative to <S>u", "gAwu", cmd_order},
    {"roots", "all roots of -w", "w", cmd_roots},
    {"spectrum", "relative orders realized on <S>u", "gAu", cmd_spectrum},
    {"pure", "is <S> closed under roots", "gA", cmd_pure},
    {"pure-closure", "least pure overgroup", "gA", cmd_pure_closure},
    {"hall-count", "number of index-k subgroups", "k", cmd_hall_count},
    {"enumerate", "all index-k subgroups", "k", cmd_enumerate},
    {"sample", "uniform random subgroup of size k", "k", cmd_sample},
    {"stats", "sampler statistics as CSV", "kt", cmd_stats},
    {"partition-check", "do the cosets partition the group", "c", cmd_partition_check},
    {"tc", "Todd-Coxeter coset enumeration", "rsl", cmd_tc},
};

void add_flags(CLI::App* sub, const char* keys, Options& o) {
  for (const char* p = keys; *p; ++p) {
    switch (*p) {
      case 'g': sub->add_option("-g,--gens", o.gens, "generators, comma separated"); break;
      case 'G': sub->add_option("-G,--gens2", o.gens2, "second generator list"); break;
      case 'A': sub->add_option("--aut", o.aut, "read the subgroup from an automaton file"); break;
      case 'w': sub->add_option("-w,--word", o.word, "word"); break;
      case 'u': sub->add_option("-u", o.u, "coset representative"); break;
      case 'v': sub->add_option("-v", o.v, "second coset representative"); break;
      case 'a': sub->add_option("--avoid", o.avoid, "words to keep out, comma separated"); break;
      case 'k': sub->add_option("-k", o.k, "index or size")->required(); break;
      case 't': sub->add_option("--trials", o.trials, "number of trials"); break;
      case 'c': sub->add_option("--coset", o.cosets, "coset as gens:representative (repeatable)"); break;
      case 'r': sub->add_option("--relators", o.relators, "relators, comma separated"); break;
      case 's': sub->add_option("--subgroup", o.subgroup, "subgroup generators"); break;
      case 'l': sub->add_option("--max-layers", o.max_layers, "flower layers before giving up"); break;
    }
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Stallings automata toolkit", "stk"};
  app.fallthrough();
  app.require_subcommand(1);
  auto* rank_opt = app.add_option("-n,--rank", o.rank, "ambient rank");
  app.add_option("--seed", o.seed, "random seed");
  app.add_option("--cap-vertices", o.cap_vertices, "vertex cap for exhaustive searches");
  app.add_flag("--json", o.json, "machine-readable output");
  app.add_option("--dot", o.dot, "write a DOT drawing of the result");

  std::map<CLI::App*, const Verb*> verbs;
  for (const Verb& v : kVerbs) {
    CLI::App* sub = app.add_subcommand(v.name, v.help);
    add_flags(sub, v.flags, o);
    verbs[sub] = &v;
  }

  std::vector<const char*> argv{"stk"};
  for (const std::string& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "stk: " << e.what() << "\n";
    return kInputError;
  }
  o.rank_given = rank_opt->count() > 0;

  const Verb* verb = nullptr;
  for (CLI::App* sub : app.get_subcommands()) verb = verbs.at(sub);

  try {
    if (o.rank == 0) throw InvalidInput("rank must be >= 1");
    Context ctx(o);
    Result r = verb->fn(ctx);
    if (!o.dot.empty() && !r.dot.empty()) {
      std::ofstream f(o.dot);
      if (!f) throw InvalidInput("cannot write " + o.dot);
      f << r.dot;
    }
    if (o.json) {
      json j = r.data;
      j["verb"] = verb->name;
      j["exit"] = r.code;
      out << j.dump() << "\n";
    } else {
      for (const std::string& line : r.lines) out << line << "\n";
    }
    return r.code;
  } catch (const ResourceLimit& e) {
    err << "stk: resource limit: " << e.what() << "\n";
    return kResourceLimit;
  } catch (const std::exception& e) {
    err << "stk: " << e.what() << "\n";
    return kInputError;
  }
}

}  // namespace stk
