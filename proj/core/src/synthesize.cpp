#include "fok/synthesize.hpp"

#include "fok/errors.hpp"
#include "fok/model_io.hpp"

namespace fok {

WitnessPair find_witness(const TruthFunction& f) {
  const auto report = is_supermultiplicative(f);
  if (report.holds) throw DomainError("truth function is supermultiplicative; no witness exists");
  return {report.witness->first, report.witness->second};
}

StarVectors star_vectors(const TruthVector& a, const TruthVector& b) {
  if (a.size() != b.size()) throw UsageError("star vectors need equal lengths");
  const std::uint32_t joint_zero = ~(a.index() | b.index()) & ((std::uint32_t{1} << a.size()) - 1);
  return {TruthVector::from_index(a.index() | joint_zero, a.size()),
          TruthVector::from_index(b.index() | joint_zero, b.size())};
}

char to_char(SeparationCase c) { return static_cast<char>('A' + static_cast<int>(c)); }

namespace {

void require_witness(const TruthFunction& f, const WitnessPair& w) {
  if (w.a.size() != f.arity() || w.b.size() != f.arity()) {
    throw UsageError("witness length does not match the arity");
  }
  if (!f(w.a) || !f(w.b) || f(tv_meet(w.a, w.b))) {
    throw UsageError("(a, b) is not a non-supermultiplicativity witness");
  }
}

}  // namespace

SeparationCase case_select(const TruthFunction& f, const WitnessPair& w, const StarVectors& s) {
  require_witness(f, w);
  if (!f(TruthVector::ones(f.arity()))) return SeparationCase::A;
  if (f(s.a_star)) return SeparationCase::B;
  if (f(s.b_star)) return SeparationCase::C;
  if (!f(tv_meet(s.a_star, s.b_star))) return SeparationCase::D;
  return SeparationCase::E;
}

SynthesisSymbols fresh_symbols(const Signature& taken) {
  auto fresh = [&](const std::string& base) {
    auto used = [&](const std::string& n) {
      return taken.has_predicate(n) || taken.has_connective(n);
    };
    if (!used(base)) return base;
    for (int i = 1;; ++i) {
      std::string n = base + std::to_string(i);
      if (!used(n)) return n;
    }
  };
  return {fresh("p"), fresh("q"), fresh("T"), fresh("R")};
}

Formula biconditional(const std::string& name, const TruthFunction& f, const StarVectors& s,
                      const Formula& alpha, const Formula& beta, const SynthesisSymbols& symbols) {
  const unsigned n = f.arity();
  if (s.a_star.size() != n || s.b_star.size() != n) {
    throw UsageError("star vector length does not match the arity");
  }
  if (f(s.a_star) || f(s.b_star) || !f(tv_meet(s.a_star, s.b_star)) ||
      !f(TruthVector::ones(n))) {
    throw UsageError("biconditional needs f(a*) = f(b*) = 0 and f(a* meet b*) = f(1) = 1");
  }
  std::vector<Formula> theta;
  for (unsigned i = 0; i < n; ++i) {
    const bool a = s.a_star[i];
    const bool b = s.b_star[i];
    if (!a && b) {
      theta.push_back(alpha);
    } else if (a && !b) {
      theta.push_back(beta);
    } else if (a && b) {
      theta.push_back(Formula::atom(symbols.t));
    } else {
      throw UsageError("a* and b* share a 0 position");
    }
  }
  return Formula::conn(name, f, std::move(theta));
}

Sequent build_sequent(const std::string& name, const TruthFunction& f, SeparationCase tag,
                      const WitnessPair& w, const SynthesisSymbols& symbols) {
  const StarVectors s = star_vectors(w.a, w.b);
  if (case_select(f, w, s) != tag) {
    throw UsageError(std::string("case tag ") + to_char(tag) + " does not match the connective");
  }
  const unsigned n = f.arity();
  const Formula t = Formula::atom(symbols.t);
  const Formula r = Formula::atom(symbols.r);
  const Formula px = Formula::atom(symbols.p, {"x"});
  const Formula qx = Formula::atom(symbols.q, {"x"});
  const Formula all_p = Formula::forall("x", px);
  const Formula some_q = Formula::exists("x", qx);

  // Selector keys per case.
  TruthVector left = w.a;
  TruthVector right = w.b;
  if (tag == SeparationCase::B) left = s.a_star;
  if (tag == SeparationCase::C) right = s.b_star;

  std::optional<Formula> bottom;
  if (tag == SeparationCase::A) {
    bottom = Formula::conn(name, f, std::vector<Formula>(n, t));
  } else if (tag == SeparationCase::D || tag == SeparationCase::E) {
    bottom = r;
  }

  std::vector<Formula> phis;
  std::vector<Formula> psis;
  for (unsigned i = 0; i < n; ++i) {
    const bool a = left[i];
    const bool b = right[i];
    if (!a && !b) {
      if (!bottom) throw DomainError("joint-0 selector position in case B or C");
      phis.push_back(*bottom);
      psis.push_back(*bottom);
    } else if (!a && b) {
      phis.push_back(px);
      psis.push_back(all_p);
    } else if (a && !b) {
      phis.push_back(qx);
      psis.push_back(some_q);
    } else {
      phis.push_back(t);
      psis.push_back(t);
    }
  }
  const Formula phi = Formula::forall("x", Formula::conn(name, f, std::move(phis)));
  const Formula psi = Formula::conn(name, f, std::move(psis));

  std::vector<Formula> antecedent{t};
  if (tag == SeparationCase::E) {
    antecedent.push_back(biconditional(name, f, s, r, all_p, symbols));
    antecedent.push_back(
        biconditional(name, f, s, r, Formula::forall("x", qx), symbols));
  }
  antecedent.push_back(phi);
  return Sequent(std::move(antecedent), {psi});
}

KripkeModel kstar(const SynthesisSymbols& symbols) {
  KripkeModel::Builder b;
  const WorldId w1 = b.add_world("w1");
  const WorldId w2 = b.add_world("w2");
  const ElementId a1 = b.add_element("a1");
  const ElementId a2 = b.add_element("a2");
  b.declare_predicate(symbols.p, 1);
  b.declare_predicate(symbols.q, 1);
  b.declare_predicate(symbols.t, 0);
  b.declare_predicate(symbols.r, 0);
  b.add_order(w1, w2);
  b.add_to_domain(w1, a1);
  b.add_to_domain(w2, a1);
  b.add_to_domain(w2, a2);
  b.set_fact(w1, symbols.p, {a1});
  b.set_fact(w2, symbols.p, {a1});
  b.set_fact(w1, symbols.t, {});
  b.set_fact(w2, symbols.t, {});
  b.set_fact(w2, symbols.q, {a2});
  b.close_order();
  return b.build();
}

SeparationCertificate synthesize(const std::string& name, const TruthFunction& f,
                                 const SynthesisOptions& options) {
  SeparationCertificate c;
  c.connective = name;
  c.function = f;
  c.witness = find_witness(f);
  c.stars = star_vectors(c.witness.a, c.witness.b);
  c.tag = case_select(f, c.witness, c.stars);

  Signature taken = options.context;
  if (!taken.has_connective(name) && !taken.has_predicate(name)) taken.add_connective(name, f);
  c.symbols = fresh_symbols(taken);
  c.sequent = build_sequent(name, f, c.tag, c.witness, c.symbols);
  c.model = kstar(c.symbols);
  c.world = *c.model.find_world("w1");

  Evaluator ev(c.model);
  const Assignment empty;
  for (const auto& a : c.sequent.antecedent()) c.antecedent_values.push_back(ev.value(c.world, empty, a));
  for (const auto& b : c.sequent.succedent()) c.succedent_values.push_back(ev.value(c.world, empty, b));
  c.sequent_value = ev.sequent_value(c.world, empty, c.sequent);

  if (options.run_cd_search) {
    c.cd_verdict = decide(c.sequent, Mode::ConstantDomain, options.cd_bounds, options.search);
  }
  return c;
}

bool certificate_rechecks(const SeparationCertificate& cert) {
  return validate_model(cert.model).empty() &&
         !eval_sequent(cert.model, cert.world, Assignment{}, cert.sequent);
}

std::string render(const SeparationCertificate& c) {
  std::string out;
  auto line = [&out](const std::string& key, const std::string& value) {
    out += key + ": " + value + "\n";
  };
  line("connective", c.connective);
  line("arity", std::to_string(c.function.arity()));
  line("table", c.function.table_bits());
  line("case", std::string(1, to_char(c.tag)));
  line("witness.a", c.witness.a.to_string());
  line("witness.b", c.witness.b.to_string());
  line("star.a", c.stars.a_star.to_string());
  line("star.b", c.stars.b_star.to_string());
  line("symbols", c.symbols.p + " " + c.symbols.q + " " + c.symbols.t + " " + c.symbols.r);
  line("sequent", render(c.sequent));
  line("refutation", "K* at " + c.model.world_name(c.world) + " under {}");
  std::size_t i = 0;
  for (const auto& a : c.sequent.antecedent()) {
    line("  antecedent", render(a) + " = " + (c.antecedent_values[i++] ? "1" : "0"));
  }
  i = 0;
  for (const auto& b : c.sequent.succedent()) {
    line("  succedent", render(b) + " = " + (c.succedent_values[i++] ? "1" : "0"));
  }
  line("  sequent value", c.sequent_value ? "1" : "0");
  if (c.cd_verdict) {
    line("cd-search", std::string(c.cd_verdict->refuted() ? "Refuted" : "ValidUpToBounds") + " (" +
                          describe(c.cd_verdict->bounds) + "), models examined " +
                          std::to_string(c.cd_verdict->models_examined));
  } else {
    line("cd-search", "skipped");
  }
  out += "kstar:\n";
  out += write_model(c.model);
  return out;
}

}  // namespace fok
