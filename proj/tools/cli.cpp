#include "cli.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "fok/construct.hpp"
#include "fok/corpus.hpp"
#include "fok/errors.hpp"
#include "fok/model_io.hpp"
#include "fok/search.hpp"
#include "fok/synthesize.hpp"

namespace fok::cli {

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_output(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw UsageError("cannot write '" + path + "'");
  f << text;
}

struct Global {
  unsigned workers = 0;
  std::uint64_t seed = 1;
  bool no_timing = false;
};

/// Connective given as a builtin name, a table bit string or a JSON file.
struct ConnectiveArg {
  std::string builtin_name;
  std::string table;
  std::string file;
  std::string name;

  void add_to(CLI::App& app) {
    app.add_option("--builtin", builtin_name, "builtin connective (not, and, or, imp, xor, iff)");
    app.add_option("--table", table, "truth table bits, index 0 first (e.g. 0111)");
    app.add_option("--connective", file, "builtin name or JSON file {\"arity\":n,\"table\":bits}");
    app.add_option("--name", name, "connective name used in output");
  }

  std::pair<std::string, TruthFunction> resolve() const {
    const int given = !builtin_name.empty() + !table.empty() + !file.empty();
    if (given != 1) throw UsageError("give exactly one of --builtin, --table, --connective");
    if (!builtin_name.empty()) return {name.empty() ? builtin_name : name, builtin(builtin_name)};
    if (!table.empty()) return {name.empty() ? "c" : name, TruthFunction::from_bits(table)};
    if (is_builtin(file)) return {name.empty() ? file : name, builtin(file)};
    try {
      return {name.empty() ? "c" : name, TruthFunction::from_json(read_file(file))};
    } catch (const UsageError& e) {
      if (dynamic_cast<const ParseError*>(&e)) throw;
      throw InvalidSignatureError(std::string("connective file: ") + e.what());
    }
  }
};

Signature load_signature(const std::string& path) {
  if (path.empty()) return Signature::with_builtins();
  return Signature::from_json(read_file(path));
}

Sequent load_sequent(const std::string& file, const std::string& text, const std::string& sig_path) {
  if (file.empty() == text.empty()) throw UsageError("give exactly one of --seq FILE, --sequent TEXT");
  const std::string src = file.empty() ? text : read_file(file);
  if (sig_path.empty()) {
    Signature sig = Signature::with_builtins();
    return parse_sequent(src, sig, UnknownPredicates::Declare);
  }
  return parse_sequent(src, load_signature(sig_path));
}

WorldId pick_root(const ModelDocument& doc, const std::string& requested) {
  const std::string& name = !requested.empty() ? requested : doc.root.value_or("");
  if (!name.empty()) {
    auto w = doc.model.find_world(name);
    if (!w) throw UsageError("unknown world '" + name + "'");
    return *w;
  }
  const std::size_t n = doc.model.world_count();
  for (std::size_t w = 0; w < n; ++w) {
    if (doc.model.upset(static_cast<WorldId>(w)).size() == n) return static_cast<WorldId>(w);
  }
  throw UsageError("model has no least world; pass --root");
}

std::string yes_no(bool b) { return b ? "yes" : "no"; }

// ---------------------------------------------------------------------------
// Subcommands

int analyze(const ConnectiveArg& arg, std::ostream& out) {
  const auto [name, f] = arg.resolve();
  const auto sm = is_supermultiplicative(f);
  out << "connective: " << name << "\n";
  out << "arity: " << f.arity() << "\n";
  out << "table: " << f.table_bits() << "\n";
  out << "supermultiplicative: " << yes_no(sm.holds) << "\n";
  if (!sm.holds) {
    out << "witness: " << sm.witness->first.to_string() << " " << sm.witness->second.to_string()
        << "\n";
  }
  out << "monotonic: " << yes_no(is_monotonic(f)) << "\n";
  return kValid;
}

struct DecideArgs {
  std::string mode = "kripke";
  int max_worlds = 2;
  int max_domain = 2;
  std::string shape = "poset";
  std::string seq_file;
  std::string sequent;
  std::string sig;
  bool single_succedent = false;
};

int decide_cmd(const DecideArgs& a, const Global& g, std::ostream& out) {
  const Mode mode = parse_mode(a.mode);
  SearchBounds bounds{a.max_worlds, a.max_domain, parse_shape(a.shape), false};
  const Sequent s = load_sequent(a.seq_file, a.sequent, a.sig);
  const Verdict v = decide(s, mode, bounds, {g.workers, a.single_succedent});
  const std::string where =
      "mode " + std::string(to_string(mode)) + ", " + describe(v.bounds);
  if (!v.refuted()) {
    out << "ValidUpToBounds (" << where << ")\n";
    out << "sequent: " << render(s) << "\n";
    out << "models examined: " << v.models_examined << "\n";
    return kValid;
  }
  const auto& cm = *v.countermodel;
  ModelWriteOptions opts;
  opts.notes.push_back("Refuted (" + where + ")");
  opts.notes.push_back("sequent: " + render(s));
  opts.notes.push_back("witness: world " + cm.model.world_name(cm.witness.world) + ", assignment " +
                       render(cm.witness.assignment, cm.model));
  opts.notes.push_back("models examined: " + std::to_string(v.models_examined));
  // Notes double as comments so the output stays a loadable model file.
  std::string text = write_model(cm.model, opts);
  std::string commented;
  std::istringstream lines(text);
  for (std::string line; std::getline(lines, line);) {
    if (line.rfind("note ", 0) == 0) line = "# " + line.substr(5);
    commented += line + "\n";
  }
  out << commented;
  return kRefuted;
}

struct SynthArgs {
  ConnectiveArg connective;
  std::vector<int> cd_bounds;
  std::string shape = "poset";
  bool no_cd = false;
  std::string out_file;
};

int synthesize_cmd(const SynthArgs& a, const Global& g, std::ostream& out) {
  const auto [name, f] = a.connective.resolve();
  SynthesisOptions opts;
  opts.run_cd_search = !a.no_cd;
  if (!a.cd_bounds.empty()) {
    if (a.cd_bounds.size() != 2) throw UsageError("--cd-bounds takes two numbers: W D");
    opts.cd_bounds.max_worlds = a.cd_bounds[0];
    opts.cd_bounds.max_domain = a.cd_bounds[1];
  }
  opts.cd_bounds.shape = parse_shape(a.shape);
  opts.search.workers = g.workers;
  const auto cert = synthesize(name, f, opts);
  write_output(render(cert), a.out_file, out);
  return kValid;
}

struct UnravelArgs {
  std::string model;
  bool strict = false;
  unsigned stutter = 0;
  std::string root;
  std::string out_file;
};

int unravel_cmd(const UnravelArgs& a, std::ostream& out) {
  if (a.strict == (a.stutter > 0)) throw UsageError("give exactly one of --strict, --stutter L");
  const ModelDocument doc = parse_model_document(read_file(a.model));
  require_valid(doc.model);
  const WorldId root = pick_root(doc, a.root);
  const TreeModel t = a.strict ? unravel_strict(doc.model, root)
                               : unravel_stuttered(doc.model, root, a.stutter);
  ModelWriteOptions opts;
  opts.root = t.model.world_name(t.root);
  for (std::size_t n = 0; n < t.size(); ++n) {
    opts.last[t.model.world_name(static_cast<WorldId>(n))] = doc.model.world_name(t.last_map[n]);
  }
  if (a.strict) {
    opts.notes.push_back("strict unraveling from " + doc.model.world_name(root) + ", " +
                         std::to_string(t.size()) + " nodes");
  } else {
    opts.notes.push_back("stuttered unraveling from " + doc.model.world_name(root) +
                         ", length bound " + std::to_string(a.stutter) + ", " +
                         std::to_string(t.size()) + " nodes");
    opts.notes.push_back("truncated: value preservation and the bar property hold only in the limit");
  }
  write_output(write_model(t.model, opts), a.out_file, out);
  return kValid;
}

int complete_cmd(const std::string& path, const std::string& out_file, std::ostream& out) {
  const ModelDocument doc = parse_model_document(read_file(path));
  const TreeModel t = tree_from_model(doc.model);
  const CompletedModel c = complete_to_constant_domain(t);
  ModelWriteOptions opts;
  opts.root = t.model.world_name(t.root);
  opts.notes.push_back("constant-domain completion, " + std::to_string(c.elements.size()) +
                       " choice functions");
  for (std::size_t i = 0; i < c.elements.size(); ++i) {
    opts.notes.push_back(c.model.element_name(static_cast<ElementId>(i)) + " = " +
                         render(c.elements[i], t));
  }
  write_output(write_model(c.model, opts), out_file, out);
  return kValid;
}

struct LemmaArgs {
  std::string model;
  std::string formula;
  std::string world;
  std::vector<std::string> assign;
  std::string sig;
};

int check_lemma_cmd(const LemmaArgs& a, std::ostream& out) {
  const ModelDocument doc = parse_model_document(read_file(a.model));
  const TreeModel t = tree_from_model(doc.model);
  const CompletedModel c = complete_to_constant_domain(t);

  Signature sig = load_signature(a.sig);
  for (const auto& p : t.model.predicates()) sig.add_predicate(p.name, p.arity);
  const Formula phi = parse_formula(a.formula, sig);

  WorldId w = t.root;
  if (!a.world.empty()) {
    auto found = t.model.find_world(a.world);
    if (!found) throw UsageError("unknown world '" + a.world + "'");
    w = *found;
  }
  // x=a1 lifts an element of the tree; x=F3 names an element of K''.
  Assignment rho;
  Assignment star;
  for (const auto& item : a.assign) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw UsageError("--assign expects VAR=ELEMENT");
    const std::string var = item.substr(0, eq);
    const std::string val = item.substr(eq + 1);
    if (auto e = c.model.find_element(val)) {
      rho = rho.bind(var, *e);
    } else if (auto e2 = t.model.find_element(val)) {
      star = star.bind(var, *e2);
    } else {
      throw UsageError("unknown element '" + val + "'");
    }
  }
  for (const auto& [var, e] : lift_assignment(t, c, star)) rho = rho.bind(var, e);
  for (const auto& x : phi.free_vars()) {
    if (!rho.contains(x)) throw UsageError("free variable '" + x + "' needs --assign");
  }
  const auto report = check_main_lemma_instance(t, c, phi, w, rho);
  out << to_json(report) << "\n";
  return kValid;
}

int census_cmd(unsigned arity, bool list, std::ostream& out) {
  const Census c = classify_connectives(arity);
  out << "arity: " << c.arity << "\n";
  out << "total: " << c.total << "\n";
  const char* label[2][2] = {{"neither", "monotonic only"},
                             {"supermultiplicative only", "both"}};
  for (int sm = 1; sm >= 0; --sm) {
    for (int mono = 1; mono >= 0; --mono) {
      out << label[sm][mono] << ": " << c.counts[sm][mono] << "\n";
      if (!list) continue;
      for (const auto& f : c.members[sm][mono]) out << "  " << f.table_bits() << "\n";
    }
  }
  out << "supermultiplicative: " << c.counts[1][0] + c.counts[1][1] << "\n";
  out << "monotonic: " << c.counts[0][1] + c.counts[1][1] << "\n";
  return kValid;
}

int relations_cmd(const std::string& sig_path, const std::string& names, std::ostream& out) {
  Signature sig;
  if (!sig_path.empty()) {
    sig = load_signature(sig_path);
  } else if (!names.empty()) {
    std::istringstream in(names);
    for (std::string n; std::getline(in, n, ',');) {
      if (!n.empty()) sig.add_connective(n, builtin(n));
    }
  } else {
    throw UsageError("give --sig FILE or --connectives LIST");
  }
  const auto r = report_relations(sig);
  std::string conns;
  for (const auto& [name, f] : sig.connectives()) conns += (conns.empty() ? "" : ",") + name;
  out << "connectives: " << conns << "\n";
  out << "ILS=CDS: " << (r.ils_equals_cds ? "true" : "false") << "\n";
  out << "CDS=CLS: " << (r.cds_equals_cls ? "true" : "false") << "\n";
  out << "ILS=CLS: " << (r.ils_equals_cls ? "true" : "false") << "\n";
  for (const auto& reason : r.reasons) out << "reason: " << reason << "\n";
  return kValid;
}

int corpus_cmd(const std::string& names, std::size_t size, const Global& g, std::ostream& out) {
  std::vector<std::string> conns;
  std::istringstream in(names);
  for (std::string n; std::getline(in, n, ',');) {
    if (!n.empty()) conns.push_back(n);
  }
  const Signature sig = corpus_signature(conns);
  for (const auto& s : generate_corpus(sig, {g.seed, size, 3, 2})) out << render(s) << "\n";
  return kValid;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Kripke semantics workbench for first-order logic with arbitrary connectives",
               "fok"};
  app.require_subcommand(1);
  Global g;
  app.add_option("--workers", g.workers, "worker threads (default: FOK_WORKERS or 1)");
  app.add_option("--seed", g.seed, "seed for corpus generation");
  app.add_flag("--no-timing", g.no_timing, "suppress the timing line on stderr");

  ConnectiveArg analyze_arg;
  auto* analyze_app = app.add_subcommand("analyze-connective", "classify a truth function");
  analyze_arg.add_to(*analyze_app);

  DecideArgs d;
  auto* decide_app = app.add_subcommand("decide", "bounded countermodel search");
  decide_app->add_option("--mode", d.mode, "kripke, cd or classical");
  decide_app->add_option("--max-worlds", d.max_worlds, "world bound");
  decide_app->add_option("--max-domain", d.max_domain, "domain bound");
  decide_app->add_option("--shape", d.shape, "any-preorder, poset, tree or chain");
  decide_app->add_option("--seq", d.seq_file, "file holding the sequent");
  decide_app->add_option("--sequent", d.sequent, "the sequent as text");
  decide_app->add_option("--sig", d.sig, "signature JSON (default: builtins, predicates inferred)");
  decide_app->add_flag("--single-succedent", d.single_succedent, "require exactly one succedent");

  SynthArgs sy;
  auto* synth_app = app.add_subcommand("synthesize", "separating sequent for a connective");
  sy.connective.add_to(*synth_app);
  synth_app->add_option("--cd-bounds", sy.cd_bounds, "W D bounds for the constant-domain search")
      ->expected(2);
  synth_app->add_option("--shape", sy.shape, "frame shape for the constant-domain search");
  synth_app->add_flag("--no-cd", sy.no_cd, "skip the constant-domain search");
  synth_app->add_option("--out", sy.out_file, "write the certificate to a file");

  UnravelArgs un;
  auto* unravel_app = app.add_subcommand("unravel", "unravel a model into a tree");
  unravel_app->add_option("MODEL", un.model, "model file")->required();
  unravel_app->add_flag("--strict", un.strict, "chains of immediate successors");
  unravel_app->add_option("--stutter", un.stutter, "non-decreasing sequences up to length L");
  unravel_app->add_option("--root", un.root, "start world (default: least world)");
  unravel_app->add_option("--out", un.out_file, "write the tree model to a file");

  std::string complete_model;
  std::string complete_out;
  auto* complete_app = app.add_subcommand("complete", "constant-domain completion of a tree");
  complete_app->add_option("MODEL", complete_model, "tree model file")->required();
  complete_app->add_option("--out", complete_out, "write the completed model to a file");

  LemmaArgs lm;
  auto* lemma_app =
      app.add_subcommand("check-main-lemma", "compare a formula in the tree and its completion");
  lemma_app->add_option("MODEL", lm.model, "tree model file")->required();
  lemma_app->add_option("FORMULA", lm.formula, "formula")->required();
  lemma_app->add_option("--world", lm.world, "node (default: root)");
  lemma_app->add_option("--assign", lm.assign, "VAR=ELEMENT, tree elements are lifted");
  lemma_app->add_option("--sig", lm.sig, "signature JSON for connectives");

  unsigned census_arity = 2;
  bool census_list = false;
  auto* census_app = app.add_subcommand("census", "classify all truth functions of one arity");
  census_app->add_option("--arity", census_arity, "arity (at most 4)");
  census_app->add_flag("--list", census_list, "list the tables in each class");

  std::string rel_sig;
  std::string rel_names;
  auto* rel_app = app.add_subcommand("report-relations", "which validity notions coincide");
  rel_app->add_option("--sig", rel_sig, "signature JSON");
  rel_app->add_option("--connectives", rel_names, "comma-separated builtin names");

  std::string corpus_names = "not,and,imp";
  std::size_t corpus_size = 20;
  auto* corpus_app = app.add_subcommand("corpus", "print the seeded sequent corpus");
  corpus_app->add_option("--connectives", corpus_names, "comma-separated builtin names");
  corpus_app->add_option("--size", corpus_size, "number of sequents");

  const auto start = std::chrono::steady_clock::now();
  int code = kUsage;
  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
    if (analyze_app->parsed()) {
      code = analyze(analyze_arg, out);
    } else if (decide_app->parsed()) {
      code = decide_cmd(d, g, out);
    } else if (synth_app->parsed()) {
      code = synthesize_cmd(sy, g, out);
    } else if (unravel_app->parsed()) {
      code = unravel_cmd(un, out);
    } else if (complete_app->parsed()) {
      code = complete_cmd(complete_model, complete_out, out);
    } else if (lemma_app->parsed()) {
      code = check_lemma_cmd(lm, out);
    } else if (census_app->parsed()) {
      code = census_cmd(census_arity, census_list, out);
    } else if (rel_app->parsed()) {
      code = relations_cmd(rel_sig, rel_names, out);
    } else if (corpus_app->parsed()) {
      code = corpus_cmd(corpus_names, corpus_size, g, out);
    }
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kValid;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kValid;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const InvalidInputError& e) {
    err << "error: " << e.what() << "\n";
    return kInvalidInput;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }

  const char* env = std::getenv("FOK_NO_TIMING");
  if (!g.no_timing && !(env && *env && std::string(env) != "0")) {
    const auto ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() -
                                                              start)
                        .count();
    std::ostringstream line;
    line.setf(std::ios::fixed);
    line.precision(1);
    line << "time: " << ms << " ms\n";
    err << line.str();
  }
  return code;
}

}  // namespace fok::cli
