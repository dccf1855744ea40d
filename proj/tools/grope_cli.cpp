// grope: command-line front end to the core library.
//
// Exit status: 0 success, 1 domain error, 2 parse or usage error.

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <future>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "grope/clasper.hpp"
#include "grope/diagram_space.hpp"
#include "grope/errors.hpp"
#include "grope/graph.hpp"
#include "grope/graph_enumerate.hpp"
#include "grope/ihx.hpp"
#include "grope/lie.hpp"
#include "grope/refinement.hpp"
#include "grope/tree.hpp"

using namespace grope;
using nlohmann::json;

namespace {

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Flag combinations CLI11 cannot express.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

class LineWriter {
 public:
  explicit LineWriter(const std::string& path) : out_(path, std::ios::binary | std::ios::trunc) {
    if (!out_) throw IoError("cannot write " + path);
  }
  void write(const json& j) { out_ << j.dump() << '\n'; }

 private:
  std::ofstream out_;
};

void print_json(const json& j) { std::cout << j.dump(2) << '\n'; }

std::string join_ints(const std::vector<int>& v, char sep = ',') {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? std::string(1, sep) : "") + std::to_string(v[i]);
  return s;
}

// Exact integers: a JSON number when it fits in 64 bits, else a decimal string.
json big(const BigInt& x) { return x.fits_slong_p() ? json(x.get_si()) : json(to_string(x)); }

json bigints(const std::vector<BigInt>& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(big(x));
  return a;
}

std::string bigints_text(const std::vector<BigInt>& v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? " " : "") + to_string(v[i]);
  return s + "]";
}

json signed_tree_json(const SignedTree& s) {
  return {{"sign", s.sign}, {"tree", to_string(s.tree)}, {"labels", tip_labels(s.tree)}};
}

// --- subcommands -----------------------------------------------------------

struct DegreeArgs {
  std::string graph;
  std::string tree;
};

void cmd_degree(const DegreeArgs& a, bool as_json) {
  if (a.graph.empty() == a.tree.empty()) throw DomainError("give exactly one of --graph or --tree");
  const UnitrivalentGraph g =
      a.graph.empty() ? tree_to_graph(parse_rooted_tree(a.tree)) : parse_graph(read_file(a.graph));
  const int v = vassiliev_degree(g), l = loop_degree(g);
  if (as_json)
    print_json({{"vassiliev", v}, {"loop", l}, {"grope", grope_degree(g)}, {"vertices", g.vertex_count()}});
  else
    std::cout << "v=" << v << " loop=" << l << " grope=" << grope_degree(g) << '\n';
}

void cmd_class(const std::string& text, bool as_json) {
  const TreeWithBoxes t = parse_tree(text);
  std::optional<bool> half;
  std::optional<int> height;
  if (t.is_box_free()) {
    const RootedTree r(t.root());
    half = is_half_grope(r);
    height = symmetric_height(r);
  }
  if (as_json) {
    json j = {{"tree", to_string(t)}, {"class", class_of(t)}, {"tips", t.tip_count()}, {"boxes", t.box_count()}};
    j["half_grope"] = half ? json(*half) : json(nullptr);
    j["symmetric_height"] = height ? json(*height) : json(nullptr);
    print_json(j);
    return;
  }
  std::cout << "class=" << class_of(t) << " tips=" << t.tip_count() << " boxes=" << t.box_count();
  if (half) std::cout << " half-grope=" << (*half ? "yes" : "no");
  if (height) std::cout << " symmetric-height=" << *height;
  std::cout << '\n';
}

struct GenArgs {
  std::string kind;
  int class_ = 0;
  int height = -1;
};

void cmd_gen(const GenArgs& a, bool as_json) {
  RootedTree t;
  if (a.kind == "half") {
    if (a.class_ < 1) throw DomainError("--kind half needs --class >= 1");
    t = gen_half(a.class_);
  } else {
    if (a.height < 0) throw DomainError("--kind symmetric needs --height >= 0");
    t = gen_symmetric(a.height);
  }
  if (as_json)
    print_json({{"tree", to_string(t)}, {"class", class_of(t)}});
  else
    std::cout << to_string(t) << '\n';
}

struct TreeTraceArgs {
  std::string tree;
  std::string trace;
};

void cmd_refine(const TreeTraceArgs& a, bool as_json) {
  const TreeWithBoxes t = parse_tree(a.tree);
  std::vector<RefineStep> steps;
  const auto out = refine(t, &steps);
  if (!a.trace.empty()) {
    LineWriter w(a.trace);
    for (std::size_t i = 0; i < steps.size(); ++i)
      w.write({{"step", i}, {"location", path_to_string(steps[i].location)}, {"result", to_string(steps[i].result)}});
  }
  if (as_json) {
    json trees = json::array();
    for (const auto& r : out) trees.push_back(to_string(r));
    print_json({{"input", to_string(t)}, {"class", class_of(t)}, {"count", out.size()}, {"trees", trees}});
    return;
  }
  for (const auto& r : out) std::cout << to_string(r) << '\n';
}

void cmd_ihx(const TreeTraceArgs& a, bool as_json) {
  const RootedTree t = with_tip_labels(parse_rooted_tree(a.tree));
  std::vector<IhxTraceStep> steps;
  const auto out = ihx_reduce(t, &steps);
  if (!a.trace.empty()) {
    LineWriter w(a.trace);
    for (const auto& s : steps)
      w.write({{"step", s.step},
               {"input", to_string(s.input)},
               {"edge", path_to_string(s.edge)},
               {"h", signed_tree_json(s.result.h)},
               {"x", signed_tree_json(s.result.x)}});
  }
  if (as_json) {
    json terms = json::array();
    for (const auto& s : out) terms.push_back(signed_tree_json(s));
    print_json({{"input", to_string(t)}, {"class", class_of(t)}, {"steps", steps.size()}, {"terms", terms}});
    return;
  }
  for (const auto& s : out)
    std::cout << (s.sign > 0 ? "+1 " : "-1 ") << to_string(s.tree) << "  tips=" << join_ints(tip_labels(s.tree))
              << '\n';
}

struct CleanArgs {
  std::string state;
  std::string policy = "zero";
  int bound = 0;
  std::optional<std::uint64_t> budget;
  std::optional<std::uint64_t> seed;
  std::optional<int> max_degree;
  std::string strategy = "first";
  int runs = 1;
  std::string trace;
};

struct RunOutput {
  std::uint64_t seed = 0;
  CleanupResult result;
  std::uint64_t bound = 0;
  BigInt moves = 0;
  bool verified = false;
  std::string why;
};

void cmd_clean(const CleanArgs& a, bool as_json) {
  const ClasperState initial = parse_clasper_state(read_file(a.state));
  const bool stochastic = a.policy == "adversarial" || a.strategy == "random";
  if (stochastic && !a.seed) throw UsageError("--seed is required with an adversarial policy or random strategy");
  if (a.runs < 1) throw UsageError("--runs must be positive");
  if (a.bound < 0) throw UsageError("--bound must be non-negative");
  const int max_degree = a.max_degree.value_or(2 * class_of(initial.tree));
  const Strategy strategy = a.strategy == "random" ? Strategy::Random : Strategy::First;

  auto one_run = [&](int index) {
    RunOutput r;
    r.seed = a.seed.value_or(0) + static_cast<std::uint64_t>(index);
    InterferencePolicy p;
    p.mode = a.policy == "adversarial" ? InterferencePolicy::Mode::Adversarial : InterferencePolicy::Mode::Zero;
    p.bound = a.bound;
    p.seed = r.seed;
    p.budget = a.budget.value_or(64u * static_cast<std::uint64_t>(a.bound));
    r.result = cleanup(initial, p, strategy, max_degree);
    r.bound = step_bound(initial, p, max_degree);
    r.verified = verify_trace(r.result.trace, &r.why);
    for (const auto& rec : r.result.trace) r.moves += rec.copies;
    r.verified = r.verified && r.moves <= BigInt(std::to_string(r.bound));
    if (!r.verified && r.why.empty()) r.why = "more moves than the step bound";
    return r;
  };

  // Runs execute in parallel batches; results are collected by run index.
  std::vector<RunOutput> results(a.runs);
  const int width = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  for (int start = 0; start < a.runs; start += width) {
    std::vector<std::future<RunOutput>> batch;
    for (int i = start; i < std::min(a.runs, start + width); ++i)
      batch.push_back(std::async(std::launch::async, one_run, i));
    for (std::size_t j = 0; j < batch.size(); ++j) results[start + j] = batch[j].get();
  }

  if (!a.trace.empty()) {
    LineWriter w(a.trace);
    for (int i = 0; i < a.runs; ++i)
      for (const auto& rec : results[i].result.trace) {
        json j = to_json(rec);
        j["run"] = i;
        w.write(j);
      }
  }

  bool all_ok = true;
  if (as_json) {
    auto weighted = [](const std::vector<WeightedClasper>& list) {
      json out = json::array();
      for (const auto& w : list) {
        json j = to_json(w.state);
        j["copies"] = big(w.copies);
        out.push_back(std::move(j));
      }
      return out;
    };
    json runs = json::array();
    for (int i = 0; i < a.runs; ++i) {
      const RunOutput& r = results[i];
      runs.push_back({{"run", i},
                      {"seed", r.seed},
                      {"terminal", weighted(r.result.terminal)},
                      {"remainder", weighted(r.result.remainder)},
                      {"discarded", big(r.result.discarded)},
                      {"trace_records", r.result.trace.size()},
                      {"moves", big(r.moves)},
                      {"step_bound", r.bound},
                      {"verified", r.verified}});
      all_ok = all_ok && r.verified;
    }
    print_json({{"initial", to_json(initial)},
                {"policy", a.policy},
                {"bound", a.bound},
                {"budget", a.budget.value_or(64u * static_cast<std::uint64_t>(a.bound))},
                {"strategy", a.strategy},
                {"max_degree", max_degree},
                {"runs", runs}});
  } else {
    auto list = [](const char* name, const std::vector<WeightedClasper>& ws) {
      std::cout << name << ' ' << ws.size() << '\n';
      for (const auto& w : ws)
        std::cout << "# degree " << w.state.grope_deg << " copies " << to_string(w.copies) << '\n'
                  << format_clasper_state(w.state);
    };
    for (int i = 0; i < a.runs; ++i) {
      const RunOutput& r = results[i];
      std::cout << "run " << i << " seed " << r.seed << '\n';
      list("terminal", r.result.terminal);
      list("remainder", r.result.remainder);
      std::cout << "discarded " << to_string(r.result.discarded) << '\n';
      std::cout << "trace " << r.result.trace.size() << " records, " << to_string(r.moves) << " moves, bound "
                << r.bound << '\n';
      std::cout << "verify-trace " << (r.verified ? "ok" : "FAILED: " + r.why) << '\n';
      all_ok = all_ok && r.verified;
    }
  }
  if (!all_ok) throw DomainError("cleanup produced a trace that fails verification");
}

void cmd_verify(const std::string& path, bool as_json) {
  std::istringstream in(read_file(path));
  std::map<std::int64_t, std::vector<TraceRecord>> by_run;
  std::string line;
  std::size_t records = 0, lineno = 0, offset = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::size_t here = offset;
    offset += line.size() + 1;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    json j;
    try {
      j = json::parse(line);
    } catch (const json::parse_error& e) {
      throw ParseError("line " + std::to_string(lineno) + ": " + e.what(), here + e.byte);
    }
    by_run[j.value("run", std::int64_t{0})].push_back(trace_record_from_json(j));
    ++records;
  }
  std::string why;
  std::optional<std::int64_t> failed;
  for (const auto& [run, trace] : by_run)
    if (!verify_trace(trace, &why)) {
      failed = run;
      break;
    }
  if (as_json) {
    json j = {{"ok", !failed}, {"records", records}, {"runs", by_run.size()}};
    if (failed) j["failure"] = {{"run", *failed}, {"reason", why}};
    print_json(j);
  } else if (failed) {
    std::cout << "fail run " << *failed << ": " << why << '\n';
  } else {
    std::cout << "ok " << records << " records in " << by_run.size() << " runs\n";
  }
  if (failed) throw DomainError("trace violates the move table");
}

struct SpaceArgs {
  int class_ = 0;
  bool dump = false;
};

void cmd_space(const SpaceArgs& a, bool as_json) {
  if (a.class_ < 1) throw DomainError("--class must be >= 1");
  const Quotient q(tree_presentation(a.class_));
  const auto& p = q.presentation();
  if (as_json) {
    json j = {{"class", a.class_},
              {"generators", p.generators.size()},
              {"relations", p.relations.size()},
              {"invariant_factors", bigints(q.invariant_factors())},
              {"torsion", bigints(q.torsion())},
              {"free_rank", q.free_rank()}};
    if (a.dump) j["presentation"] = dump_presentation(p);
    print_json(j);
    return;
  }
  std::cout << "class=" << a.class_ << " generators=" << p.generators.size() << " relations=" << p.relations.size()
            << " torsion=" << bigints_text(q.torsion()) << " free_rank=" << q.free_rank() << '\n';
  if (a.dump) std::cout << dump_presentation(p);
}

void cmd_span(int k, bool as_json) {
  if (k < 1) throw DomainError("--class must be >= 1");
  const bool spans = span_check(k);
  if (as_json)
    print_json({{"class", k}, {"spans", spans}});
  else
    std::cout << "class=" << k << " caterpillar spans: " << (spans ? "yes" : "no") << '\n';
}

struct BracketArgs {
  std::string tree;
  std::string labels;
  std::optional<int> degree;
};

std::vector<int> parse_labels(const std::string& s, int count) {
  std::vector<int> out;
  if (s.empty()) {
    for (int i = 1; i <= count; ++i) out.push_back(i);
    return out;
  }
  std::size_t pos = 0;
  while (pos <= s.size()) {
    const std::size_t comma = std::min(s.find(',', pos), s.size());
    const std::string tok = s.substr(pos, comma - pos);
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(tok, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != tok.size() || tok.empty()) throw ParseError("bad label '" + tok + "'", pos);
    out.push_back(v);
    pos = comma + 1;
  }
  return out;
}

void cmd_bracket(const BracketArgs& a, bool as_json) {
  const RootedTree t = parse_rooted_tree(a.tree);
  const std::vector<int> labels = parse_labels(a.labels, t.tip_count());
  const GroupWord w = tree_to_bracket(t, labels);
  const int k = class_of(t);
  const int n = a.degree.value_or(std::min(k, kMaxMagnusDegree));
  const MagnusSeries m = magnus(w, n);
  const std::optional<int> lcs = lcs_degree(w, n);
  const Polynomial leading = bracket_polynomial(t, labels);
  const bool agrees = k <= n && m.homogeneous(k) == leading;
  if (as_json) {
    json terms = json::array();
    for (int d = 1; d <= n; ++d) terms.push_back(to_string(m.homogeneous(d)));
    print_json({{"tree", to_string(t)},
                {"labels", labels},
                {"word", to_string(w)},
                {"word_length", w.letters().size()},
                {"max_degree", n},
                {"lcs_degree", lcs ? json(*lcs) : json(nullptr)},
                {"magnus", terms},
                {"bracket", to_string(leading)},
                {"leading_term_matches", agrees}});
    return;
  }
  std::cout << "word: " << to_string(w) << '\n';
  std::cout << "bracket: " << to_string(leading) << '\n';
  std::cout << "lcs degree (through " << n << "): " << (lcs ? std::to_string(*lcs) : "none") << '\n';
  if (k <= n) std::cout << "degree " << k << " Magnus term " << (agrees ? "matches" : "differs") << '\n';
}

struct EnumerateArgs {
  std::optional<int> trees;
  std::optional<int> graphs;
  std::optional<int> max_vertices;
  bool planar = false;
};

void cmd_enumerate(const EnumerateArgs& a, bool as_json) {
  if (a.trees.has_value() == a.graphs.has_value()) throw DomainError("give exactly one of --trees or --graphs");
  if (a.trees) {
    if (*a.trees < 1) throw DomainError("--trees must be >= 1");
    const auto ts = a.planar ? enumerate_planar_trees(*a.trees) : enumerate_trees(*a.trees);
    if (as_json) {
      json list = json::array();
      for (const auto& t : ts) list.push_back(to_string(t));
      print_json({{"class", *a.trees}, {"planar", a.planar}, {"count", ts.size()}, {"trees", list}});
    } else {
      for (const auto& t : ts) std::cout << to_string(t) << '\n';
    }
    return;
  }
  const int d = *a.graphs;
  if (d < 1) throw DomainError("--graphs must be >= 1");
  const auto gs = enumerate_graphs(d, a.max_vertices.value_or(2 * d));
  if (as_json) {
    json list = json::array();
    for (const auto& g : gs)
      list.push_back({{"vertices", g.vertex_count()},
                      {"vassiliev", vassiliev_degree(g)},
                      {"loop", loop_degree(g)},
                      {"graph", format_graph(g)}});
    print_json({{"grope_degree", d}, {"count", gs.size()}, {"graphs", list}});
    return;
  }
  for (std::size_t i = 0; i < gs.size(); ++i) std::cout << (i ? "\n" : "") << format_graph(gs[i]);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Grope and clasper diagram toolkit"};
  app.require_subcommand(1);
  std::string format = "text";

  DegreeArgs degree;
  auto* sub_degree = app.add_subcommand("degree", "Vassiliev, loop and grope degree of a graph");
  sub_degree->add_option("--graph", degree.graph, "Graph file");
  sub_degree->add_option("--tree", degree.tree, "Rooted tree");

  std::string class_tree;
  auto* sub_class = app.add_subcommand("class", "Class and shape of a tree with boxes");
  sub_class->add_option("--tree", class_tree, "Tree")->required();

  GenArgs gen;
  auto* sub_gen = app.add_subcommand("gen", "Half-grope or symmetric tree");
  sub_gen->add_option("--kind", gen.kind)->required()->check(CLI::IsMember({"half", "symmetric"}));
  sub_gen->add_option("--class", gen.class_, "Class of a half-grope");
  sub_gen->add_option("--height", gen.height, "Height of a symmetric tree");

  TreeTraceArgs refine_args;
  auto* sub_refine = app.add_subcommand("refine", "Push boxes down and expand");
  sub_refine->add_option("--tree", refine_args.tree)->required();
  sub_refine->add_option("--trace", refine_args.trace, "JSON-lines trace file");

  TreeTraceArgs ihx_args;
  auto* sub_ihx = app.add_subcommand("ihx-reduce", "Rewrite a tree into signed caterpillars");
  sub_ihx->add_option("--tree", ihx_args.tree)->required();
  sub_ihx->add_option("--trace", ihx_args.trace, "JSON-lines trace file");

  CleanArgs clean;
  auto* sub_clean = app.add_subcommand("clean", "Run the clasper cleanup");
  sub_clean->add_option("--state", clean.state, "Clasper state file")->required();
  sub_clean->add_option("--policy", clean.policy)->check(CLI::IsMember({"zero", "adversarial"}));
  sub_clean->add_option("--bound", clean.bound, "Interference bound per count and move");
  sub_clean->add_option("--budget", clean.budget, "Total interference per run (default 64 * bound)");
  sub_clean->add_option("--seed", clean.seed);
  sub_clean->add_option("--max-degree", clean.max_degree);
  sub_clean->add_option("--strategy", clean.strategy)->check(CLI::IsMember({"first", "random"}));
  sub_clean->add_option("--runs", clean.runs);
  sub_clean->add_option("--trace", clean.trace, "JSON-lines trace file");

  std::string verify_path;
  auto* sub_verify = app.add_subcommand("verify-trace", "Check a cleanup trace against the move table");
  sub_verify->add_option("--trace", verify_path)->required();

  SpaceArgs space;
  auto* sub_space = app.add_subcommand("space", "Rooted tree diagram module of one class");
  sub_space->add_option("--class", space.class_)->required();
  sub_space->add_flag("--dump", space.dump, "Print the presentation");

  int span_class = 0;
  auto* sub_span = app.add_subcommand("span-check", "Do caterpillars span the module?");
  sub_span->add_option("--class", span_class)->required();

  BracketArgs bracket;
  auto* sub_bracket = app.add_subcommand("bracket", "Commutator word and Magnus expansion of a tree");
  sub_bracket->add_option("--tree", bracket.tree)->required();
  sub_bracket->add_option("--labels", bracket.labels, "Comma-separated generator indices, one per tip");
  sub_bracket->add_option("--degree", bracket.degree, "Magnus truncation degree");

  EnumerateArgs enumerate;
  auto* sub_enum = app.add_subcommand("enumerate", "List trees of a class or graphs of a grope degree");
  sub_enum->add_option("--trees", enumerate.trees);
  sub_enum->add_option("--graphs", enumerate.graphs);
  sub_enum->add_option("--max-vertices", enumerate.max_vertices);
  sub_enum->add_flag("--planar", enumerate.planar, "Planar trees instead of isomorphism classes");

  for (auto* sub : {sub_degree, sub_class, sub_gen, sub_refine, sub_ihx, sub_clean, sub_verify, sub_space, sub_span,
                    sub_bracket, sub_enum})
    sub->add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "json"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e, std::cerr, std::cerr);
    return 2;
  }

  const bool as_json = format == "json";
  try {
    if (*sub_degree) cmd_degree(degree, as_json);
    else if (*sub_class) cmd_class(class_tree, as_json);
    else if (*sub_gen) cmd_gen(gen, as_json);
    else if (*sub_refine) cmd_refine(refine_args, as_json);
    else if (*sub_ihx) cmd_ihx(ihx_args, as_json);
    else if (*sub_clean) cmd_clean(clean, as_json);
    else if (*sub_verify) cmd_verify(verify_path, as_json);
    else if (*sub_space) cmd_space(space, as_json);
    else if (*sub_span) cmd_span(span_class, as_json);
    else if (*sub_bracket) cmd_bracket(bracket, as_json);
    else if (*sub_enum) cmd_enumerate(enumerate, as_json);
  } catch (const UsageError& e) {
    std::cerr << e.what() << "\nRun with --help for more information.\n";
    return 2;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return 2;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
