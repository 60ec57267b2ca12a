#include <gtest/gtest.h>

#include "fok/errors.hpp"
#include "fok/synthesize.hpp"
#include "oracles.hpp"

using namespace fok;

namespace {

TruthVector tv(std::initializer_list<int> bits) { return TruthVector(bits); }

/// Case letter computed from the table alone.
char expected_case(const TruthFunction& f) {
  const auto [a, b] = oracle::least_witness(f);
  const std::uint32_t all = oracle::full_mask(f.arity());
  const std::uint32_t joint0 = ~(a | b) & all;
  const std::uint32_t as = a | joint0;
  const std::uint32_t bs = b | joint0;
  if (!f.at(all)) return 'A';
  if (f.at(as)) return 'B';
  if (f.at(bs)) return 'C';
  if (!f.at(as & bs)) return 'D';
  return 'E';
}

std::vector<TruthFunction> non_supermultiplicative_up_to(unsigned arity) {
  std::vector<TruthFunction> out;
  for (unsigned n = 0; n <= arity; ++n) {
    for (const auto& f : enumerate_truth_functions(n)) {
      if (!oracle::supermultiplicative(f)) out.push_back(f);
    }
  }
  return out;
}

SynthesisOptions no_cd() {
  SynthesisOptions o;
  o.run_cd_search = false;
  return o;
}

}  // namespace

TEST(Witness, Examples) {
  const auto w = find_witness(builtin("or"));
  EXPECT_EQ(w.a, tv({0, 1}));
  EXPECT_EQ(w.b, tv({1, 0}));
  const auto x = find_witness(builtin("xor"));
  EXPECT_EQ(x.a, tv({0, 1}));
  EXPECT_EQ(x.b, tv({1, 0}));
  EXPECT_THROW(find_witness(builtin("and")), DomainError);
}

TEST(Stars, Examples) {
  const auto s = star_vectors(tv({0, 1}), tv({1, 0}));
  EXPECT_EQ(s.a_star, tv({0, 1}));
  EXPECT_EQ(s.b_star, tv({1, 0}));
  const auto t = star_vectors(tv({0, 0, 1}), tv({0, 1, 0}));
  EXPECT_EQ(t.a_star, tv({1, 0, 1}));
  EXPECT_EQ(t.b_star, tv({1, 1, 0}));
  EXPECT_THROW(star_vectors(tv({0}), tv({0, 1})), UsageError);
}

TEST(Stars, AlgebraOverAllPairsLength3) {
  for (std::uint32_t i = 0; i < 8; ++i) {
    for (std::uint32_t j = 0; j < 8; ++j) {
      const auto a = TruthVector::from_index(i, 3);
      const auto b = TruthVector::from_index(j, 3);
      const auto s = star_vectors(a, b);
      EXPECT_EQ(tv_meet(a, s.b_star), tv_meet(a, b));
      EXPECT_EQ(tv_meet(s.a_star, b), tv_meet(a, b));
      EXPECT_EQ(tv_join(a, s.b_star), TruthVector::ones(3));
      EXPECT_EQ(tv_join(s.a_star, b), TruthVector::ones(3));
      EXPECT_EQ(tv_join(s.a_star, s.b_star), TruthVector::ones(3));
    }
  }
}

TEST(CaseSelect, Examples) {
  auto tag = [](const TruthFunction& f) {
    const auto w = find_witness(f);
    return to_char(case_select(f, w, star_vectors(w.a, w.b)));
  };
  EXPECT_EQ(tag(builtin("xor")), 'A');
  EXPECT_EQ(tag(builtin("or")), 'B');
  const auto f = TruthFunction::from_bits("01101001");
  const auto w = find_witness(f);
  EXPECT_EQ(w.a, tv({0, 0, 1}));
  EXPECT_EQ(w.b, tv({0, 1, 0}));
  EXPECT_EQ(tag(f), 'E');
  const auto a = builtin("and");
  EXPECT_THROW(case_select(a, {tv({1, 1}), tv({1, 1})}, {tv({1, 1}), tv({1, 1})}), UsageError);
}

TEST(CaseSelect, MatchesTableOracleUpToArity3) {
  std::map<char, int> seen;
  for (const auto& f : non_supermultiplicative_up_to(3)) {
    const auto w = find_witness(f);
    const char c = to_char(case_select(f, w, star_vectors(w.a, w.b)));
    EXPECT_EQ(c, expected_case(f)) << f.table_bits();
    ++seen[c];
  }
  // Every case occurs at arity 3.
  EXPECT_EQ(seen.size(), 5u);
}

TEST(BuildSequent, OrAndXor) {
  auto text = [](const std::string& name) {
    const auto f = builtin(name);
    const auto w = find_witness(f);
    const auto tag = case_select(f, w, star_vectors(w.a, w.b));
    return render(build_sequent(name, f, tag, w));
  };
  EXPECT_EQ(text("or"), "T, forall x. or(p(x), q(x)) => or(forall x. p(x), exists x. q(x))");
  EXPECT_EQ(text("xor"), "T, forall x. xor(p(x), q(x)) => xor(forall x. p(x), exists x. q(x))");
  const auto w = find_witness(builtin("or"));
  EXPECT_THROW(build_sequent("or", builtin("or"), SeparationCase::A, w), UsageError);
}

TEST(BuildSequent, CaseEHasBiconditionals) {
  const auto f = TruthFunction::from_bits("01101001");
  const auto w = find_witness(f);
  const auto s = build_sequent("c", f, SeparationCase::E, w);
  EXPECT_EQ(s.antecedent().size(), 4u);
  std::size_t with_r = 0;
  for (const auto& a : s.antecedent()) {
    if (a.text().find("R") != std::string::npos && a.kind() == Formula::Kind::Conn) ++with_r;
  }
  EXPECT_EQ(with_r, 2u);
  EXPECT_FALSE(eval_sequent(kstar(), 0, {}, s));
}

TEST(BuildSequent, CaseAWitnessVectorAtW2) {
  // In case A the selector formulas at (w2, x -> a2) read off the witness a.
  for (const auto& f : non_supermultiplicative_up_to(3)) {
    if (expected_case(f) != 'A' || f.arity() == 0) continue;
    const auto w = find_witness(f);
    const auto s = build_sequent("c", f, SeparationCase::A, w);
    const auto k = kstar();
    for (const auto& a : s.antecedent()) {
      if (a.kind() != Formula::Kind::Forall) continue;
      std::vector<int> bits;
      for (const auto& phi : a.body().args()) bits.push_back(eval_formula(k, 1, {{"x", 1}}, phi));
      EXPECT_EQ(TruthVector(bits), w.a) << f.table_bits();
    }
  }
}

TEST(Biconditional, ShapePrecondition) {
  const auto f = TruthFunction::from_bits("01101001");
  const auto w = find_witness(f);
  const auto s = star_vectors(w.a, w.b);
  const auto bic = biconditional("c", f, s, Formula::atom("R"), Formula::atom("S"));
  EXPECT_EQ(render(bic), "c(T, R, S)");
  EXPECT_THROW(biconditional("or", builtin("or"), star_vectors(tv({0, 1}), tv({1, 0})),
                             Formula::atom("R"), Formula::atom("S")),
               UsageError);
}

TEST(Biconditional, SemanticContractOnSmallModels) {
  std::vector<TruthFunction> case_e;
  for (const auto& f : non_supermultiplicative_up_to(3)) {
    if (expected_case(f) == 'E') case_e.push_back(f);
  }
  ASSERT_FALSE(case_e.empty());
  const std::map<std::string, unsigned> preds{{"T", 0}, {"A", 0}, {"B", 0}};
  const auto alpha = Formula::atom("A");
  const auto beta = Formula::atom("B");
  for (const auto& f : case_e) {
    const auto w = find_witness(f);
    const auto bic = biconditional("c", f, star_vectors(w.a, w.b), alpha, beta);
    enumerate_models(preds, {3, 1, FrameShape::AnyPreorder, false}, [&](const KripkeModel& k) {
      for (std::size_t x = 0; x < k.world_count(); ++x) {
        const auto wx = static_cast<WorldId>(x);
        if (!oracle::eval(k, wx, {}, Formula::atom("T"))) continue;
        bool agree = true;
        for (WorldId v : k.upset(wx)) {
          agree = agree && oracle::eval(k, v, {}, alpha) == oracle::eval(k, v, {}, beta);
        }
        EXPECT_EQ(eval_formula(k, wx, {}, bic), agree) << f.table_bits();
      }
      return true;
    });
  }
}

TEST(Biconditional, QuantifiedSidesOnSmallModels) {
  const auto f = TruthFunction::from_bits("01101001");
  const auto w = find_witness(f);
  const auto s = star_vectors(w.a, w.b);
  const auto alpha = Formula::forall("x", Formula::atom("p", {"x"}));
  const auto beta = Formula::exists("x", Formula::atom("q", {"x"}));
  const auto bic = biconditional("c", f, s, alpha, beta);
  enumerate_models(std::map<std::string, unsigned>{{"T", 0}, {"p", 1}, {"q", 1}},
                   {2, 2, FrameShape::Poset, false}, [&](const KripkeModel& k) {
                     for (std::size_t x = 0; x < k.world_count(); ++x) {
                       const auto wx = static_cast<WorldId>(x);
                       if (!oracle::eval(k, wx, {}, Formula::atom("T"))) continue;
                       bool agree = true;
                       for (WorldId v : k.upset(wx)) {
                         agree = agree && oracle::eval(k, v, {}, alpha) == oracle::eval(k, v, {}, beta);
                       }
                       EXPECT_EQ(eval_formula(k, wx, {}, bic), agree);
                     }
                     return true;
                   });
}

TEST(Biconditional, TrivialAndFlipping) {
  const auto f = TruthFunction::from_bits("01101001");
  const auto w = find_witness(f);
  const auto s = star_vectors(w.a, w.b);
  KripkeModel::Builder b;
  const auto w0 = b.add_world("w0");
  const auto w1 = b.add_world("w1");
  const auto a = b.add_element("a");
  for (const char* p : {"T", "A", "B"}) b.declare_predicate(p, 0);
  b.add_order(w0, w1);
  b.add_to_domain(w0, a);
  b.add_to_domain(w1, a);
  for (WorldId x : {w0, w1}) {
    b.set_fact(x, "T", {});
    b.set_fact(x, "B", {});
  }
  b.set_fact(w1, "A", {});
  b.close_order();
  const auto k = b.build();
  const auto alpha = Formula::atom("A");
  EXPECT_TRUE(eval_formula(k, w0, {}, biconditional("c", f, s, alpha, alpha)));
  EXPECT_FALSE(eval_formula(k, w0, {}, biconditional("c", f, s, alpha, Formula::atom("B"))));
  EXPECT_TRUE(eval_formula(k, w1, {}, biconditional("c", f, s, alpha, Formula::atom("B"))));
}

TEST(KStar, Shape) {
  const auto k = kstar();
  EXPECT_TRUE(validate_model(k).empty());
  EXPECT_TRUE(oracle::valid_model(k));
  EXPECT_EQ(k.domain(0), std::vector<ElementId>{0});
  EXPECT_EQ(k.domain(1), (std::vector<ElementId>{0, 1}));
  for (WorldId w : {0, 1}) {
    EXPECT_TRUE(k.holds(w, "p", std::vector<ElementId>{0}));
    EXPECT_FALSE(k.holds(w, "q", std::vector<ElementId>{0}));
    EXPECT_TRUE(k.holds(w, "T", std::vector<ElementId>{}));
    EXPECT_FALSE(k.holds(w, "R", std::vector<ElementId>{}));
  }
  EXPECT_FALSE(k.holds(1, "p", std::vector<ElementId>{1}));
  EXPECT_TRUE(k.holds(1, "q", std::vector<ElementId>{1}));
  EXPECT_FALSE(eval_formula(k, 0, {}, Formula::forall("x", Formula::atom("p", {"x"}))));
  EXPECT_FALSE(eval_formula(k, 0, {}, Formula::exists("x", Formula::atom("q", {"x"}))));
}

TEST(Symbols, FreshOnCollision) {
  Signature taken;
  taken.add_predicate("p", 2);
  taken.add_predicate("T", 0);
  taken.add_predicate("T1", 0);
  taken.add_connective("q", builtin("or"));
  const auto s = fresh_symbols(taken);
  EXPECT_EQ(s.p, "p1");
  EXPECT_EQ(s.q, "q1");
  EXPECT_EQ(s.t, "T2");
  EXPECT_EQ(s.r, "R");
  const auto cert = [&] {
    SynthesisOptions o = no_cd();
    o.context = taken;
    return synthesize("or", builtin("or"), o);
  }();
  EXPECT_EQ(render(cert.sequent),
            "T2, forall x. or(p1(x), q1(x)) => or(forall x. p1(x), exists x. q1(x))");
  EXPECT_TRUE(certificate_rechecks(cert));
}

TEST(Synthesize, Or) {
  const auto c = synthesize("or", builtin("or"));
  EXPECT_EQ(c.tag, SeparationCase::B);
  EXPECT_FALSE(c.sequent_value);
  EXPECT_TRUE(certificate_rechecks(c));
  ASSERT_TRUE(c.cd_verdict.has_value());
  EXPECT_FALSE(c.cd_verdict->refuted());
  EXPECT_EQ(c.cd_verdict->mode, Mode::ConstantDomain);
  const auto text = render(c);
  EXPECT_NE(text.find("case: B\n"), std::string::npos);
  EXPECT_NE(text.find("kstar:\n"), std::string::npos);
  EXPECT_NE(text.find("cd-search: ValidUpToBounds"), std::string::npos);
}

TEST(Synthesize, Xor) {
  const auto c = synthesize("xor", builtin("xor"), no_cd());
  EXPECT_EQ(c.tag, SeparationCase::A);
  EXPECT_TRUE(certificate_rechecks(c));
  EXPECT_FALSE(c.cd_verdict.has_value());
  EXPECT_NE(render(c).find("cd-search: skipped"), std::string::npos);
  EXPECT_THROW(synthesize("and", builtin("and")), DomainError);
}

TEST(Synthesize, EverySmallCertificateRechecksIndependently) {
  for (const auto& f : non_supermultiplicative_up_to(3)) {
    const auto c = synthesize("c", f, no_cd());
    EXPECT_EQ(to_char(c.tag), expected_case(f));
    EXPECT_FALSE(oracle::eval_sequent(c.model, c.world, {}, c.sequent)) << f.table_bits();
    EXPECT_TRUE(c.sequent.free_vars().empty());
    for (bool v : c.antecedent_values) EXPECT_TRUE(v);
    for (bool v : c.succedent_values) EXPECT_FALSE(v);
  }
}

TEST(Synthesize, ExistentialCaseEVariantIsNotRefutedByKStar) {
  // With the second biconditional over exists x. q(x) instead of forall x. q(x),
  // that antecedent is 0 at w1, so K* no longer refutes the sequent.
  const auto f = TruthFunction::from_bits("01101001");
  const auto w = find_witness(f);
  const auto st = star_vectors(w.a, w.b);
  const auto s = build_sequent("c", f, SeparationCase::E, w);
  std::vector<Formula> ante;
  const auto r = Formula::atom("R");
  const auto exists_q = Formula::exists("x", Formula::atom("q", {"x"}));
  const auto forall_q = biconditional("c", f, st, r, Formula::forall("x", Formula::atom("q", {"x"})));
  for (const auto& a : s.antecedent()) ante.push_back(a == forall_q ? biconditional("c", f, st, r, exists_q) : a);
  const Sequent variant(ante, {s.succedent().begin(), s.succedent().end()});
  ASSERT_NE(variant, s);
  EXPECT_TRUE(eval_sequent(kstar(), 0, {}, variant));
  EXPECT_FALSE(eval_sequent(kstar(), 0, {}, s));
}
