#include <gtest/gtest.h>

#include <random>

#include "fok/corpus.hpp"
#include "fok/errors.hpp"
#include "fok/model_io.hpp"
#include "fok/search.hpp"
#include "oracles.hpp"

using namespace fok;

namespace {

Sequent seq(const std::string& text) {
  Signature s = Signature::with_builtins();
  return parse_sequent(text, s, UnknownPredicates::Declare);
}

const char* kOrSequent = "T, forall x. or(p(x), q(x)) => or(forall x. p(x), exists x. q(x))";

std::map<int, std::size_t> frames_per_size(FrameShape shape, int max_worlds) {
  std::map<int, std::size_t> out;
  for (const auto& f : enumerate_frames({max_worlds, 1, shape, false})) ++out[f.worlds];
  return out;
}

bool naturally_labeled(const std::vector<bool>& le, int n) {
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i != j && le[i * n + j] && j < i) return false;
    }
  }
  return true;
}

/// Hereditary interpretations of `preds` over a frame, counted by brute force.
std::uint64_t brute_models(const Frame& fr, const std::map<std::string, unsigned>& preds) {
  struct Slot {
    int world;
    std::size_t pred;
    std::vector<int> tuple;
  };
  std::vector<Slot> slots;
  std::size_t pi = 0;
  for (const auto& [name, ar] : preds) {
    for (int w = 0; w < fr.worlds; ++w) {
      std::vector<int> tuple(ar, 0);
      for (;;) {
        bool inside = true;
        for (int e : tuple) inside = inside && ((fr.domains[w] >> e) & 1u);
        if (inside) slots.push_back({w, pi, tuple});
        std::size_t i = 0;
        while (i < ar && ++tuple[i] == fr.elements) tuple[i++] = 0;
        if (i == ar) break;
      }
    }
    ++pi;
  }
  std::uint64_t count = 0;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << slots.size()); ++mask) {
    bool ok = true;
    for (std::size_t i = 0; i < slots.size() && ok; ++i) {
      if (!((mask >> i) & 1u)) continue;
      for (std::size_t j = 0; j < slots.size() && ok; ++j) {
        if (slots[j].pred == slots[i].pred && slots[j].tuple == slots[i].tuple &&
            fr.order[slots[i].world * fr.worlds + slots[j].world] && !((mask >> j) & 1u)) {
          ok = false;
        }
      }
    }
    if (ok) ++count;
  }
  return count;
}

}  // namespace

TEST(Bounds, Envelope) {
  EXPECT_NO_THROW(check_bounds({3, 2, FrameShape::Poset, false}));
  EXPECT_THROW(check_bounds({0, 2, FrameShape::Poset, false}), UsageError);
  EXPECT_THROW(check_bounds({1, 9, FrameShape::Chain, false}), UsageError);
  EXPECT_THROW(check_bounds({6, 2, FrameShape::AnyPreorder, false}), UsageError);
  EXPECT_THROW(check_bounds({7, 2, FrameShape::Poset, false}), UsageError);
  EXPECT_THROW(check_bounds({8, 3, FrameShape::Tree, false}), UsageError);
  EXPECT_NO_THROW(check_bounds({16, 1, FrameShape::Chain, false}));
  EXPECT_EQ(describe({3, 2, FrameShape::Poset, true}), "worlds<=3 domain<=2 shape=poset constant-domain");
  EXPECT_EQ(parse_shape("preorder"), FrameShape::AnyPreorder);
  EXPECT_THROW(parse_shape("lattice"), UsageError);
  EXPECT_EQ(parse_mode("cd"), Mode::ConstantDomain);
  EXPECT_THROW(parse_mode("beth"), UsageError);
  const auto cl = effective_bounds(Mode::Classical, {3, 2, FrameShape::Poset, false});
  EXPECT_EQ(cl.max_worlds, 1);
  EXPECT_TRUE(cl.constant_domain);
  EXPECT_TRUE(effective_bounds(Mode::ConstantDomain, {3, 2, FrameShape::Poset, false}).constant_domain);
}

TEST(Frames, PosetCountsMatchNaturallyLabeledPosets) {
  const auto got = frames_per_size(FrameShape::Poset, 4);
  for (int n = 1; n <= 4; ++n) {
    const auto expect = oracle::count_relations(n, [n](const std::vector<bool>& le) {
      return naturally_labeled(le, n);
    });
    EXPECT_EQ(got.at(n), expect) << n;
  }
  EXPECT_EQ(got.at(4), 40u);
}

TEST(Frames, PreorderCountsMatchAllPreorders) {
  const auto got = frames_per_size(FrameShape::AnyPreorder, 4);
  for (int n = 1; n <= 4; ++n) {
    EXPECT_EQ(got.at(n), oracle::count_relations(n, [](const std::vector<bool>&) { return true; }));
  }
  EXPECT_EQ(got.at(4), 355u);
}

TEST(Frames, TreeAndChainCounts) {
  const auto trees = frames_per_size(FrameShape::Tree, 5);
  for (int n = 1; n <= 5; ++n) {
    EXPECT_EQ(trees.at(n), oracle::all_trees(n).size()) << n;
  }
  EXPECT_EQ(trees.at(5), 24u);
  const auto chains = frames_per_size(FrameShape::Chain, 5);
  for (int n = 1; n <= 5; ++n) EXPECT_EQ(chains.at(n), 1u);
  const auto one = enumerate_frames({2, 1, FrameShape::Chain, false});
  ASSERT_EQ(one.size(), 2u);
  EXPECT_EQ(one[1].order, (std::vector<std::uint8_t>{1, 1, 0, 1}));
}

TEST(Frames, DomainsAreMonotone) {
  for (const auto& f : enumerate_frames({3, 2, FrameShape::AnyPreorder, false})) {
    for (int w = 0; w < f.worlds; ++w) {
      EXPECT_NE(f.domains[w], 0u);
      for (int v = 0; v < f.worlds; ++v) {
        if (f.order[w * f.worlds + v]) EXPECT_EQ(f.domains[w] & ~f.domains[v], 0u);
      }
    }
  }
  for (const auto& f : enumerate_frames({3, 2, FrameShape::Poset, true})) {
    for (int w = 0; w < f.worlds; ++w) EXPECT_EQ(f.domains[w], f.domains[0]);
  }
}

TEST(Models, SingleWorldUnary) {
  std::vector<std::string> seen;
  const auto n = enumerate_models(std::map<std::string, unsigned>{{"p", 1}},
                                  {1, 1, FrameShape::Poset, false}, [&](const KripkeModel& k) {
                                    seen.push_back(write_model(k));
                                    return true;
                                  });
  EXPECT_EQ(n, 2u);
  EXPECT_EQ(seen.size(), 2u);
  EXPECT_NE(seen[0], seen[1]);
}

TEST(Models, CountsMatchBruteForce) {
  const std::map<std::string, unsigned> preds{{"p", 1}, {"r", 0}};
  for (auto shape : {FrameShape::Chain, FrameShape::Tree, FrameShape::Poset, FrameShape::AnyPreorder}) {
    for (bool cd : {false, true}) {
      const SearchBounds b{3, 2, shape, cd};
      std::uint64_t expect = 0;
      for (const auto& fr : enumerate_frames(b)) expect += brute_models(fr, preds);
      std::uint64_t valid = 0;
      const auto n = enumerate_models(preds, b, [&](const KripkeModel& k) {
        if (oracle::valid_model(k) && (!cd || is_constant_domain(k))) ++valid;
        return true;
      });
      EXPECT_EQ(n, expect) << to_string(shape) << cd;
      EXPECT_EQ(valid, n);
    }
  }
}

TEST(Models, EarlyStop) {
  int calls = 0;
  const auto n = enumerate_models(std::map<std::string, unsigned>{{"p", 1}},
                                  {2, 2, FrameShape::Poset, false}, [&](const KripkeModel&) {
                                    return ++calls < 3;
                                  });
  EXPECT_EQ(n, 3u);
  EXPECT_EQ(calls, 3);
}

TEST(Decide, DoubleNegationRefutedOnTwoChain) {
  const auto s = seq("not(not(p)) => p");
  const auto v = decide(s, Mode::Kripke, {2, 1, FrameShape::Chain, false});
  ASSERT_TRUE(v.refuted());
  EXPECT_EQ(v.countermodel->model.world_count(), 2u);
  EXPECT_TRUE(recheck(s, v));
  const auto& k = v.countermodel->model;
  EXPECT_FALSE(k.holds(v.countermodel->witness.world, "p", std::vector<ElementId>{}));
  EXPECT_FALSE(decide(s, Mode::Classical, {2, 2, FrameShape::Poset, false}).refuted());
  EXPECT_FALSE(decide(s, Mode::ConstantDomain, {1, 2, FrameShape::Poset, false}).refuted());
}

TEST(Decide, OrSequentSeparates) {
  const auto s = seq(kOrSequent);
  const auto k = decide(s, Mode::Kripke, {2, 2, FrameShape::Poset, false});
  ASSERT_TRUE(k.refuted());
  EXPECT_TRUE(recheck(s, k));
  EXPECT_FALSE(oracle::eval_sequent(k.countermodel->model, k.countermodel->witness.world, {}, s));
  EXPECT_FALSE(decide(s, Mode::ConstantDomain, {3, 2, FrameShape::Poset, false}).refuted());
}

TEST(Decide, XorWithNullaryArgumentValidAtBounds) {
  const auto v = decide(seq("forall x. xor(p(x), r) => xor(forall x. p(x), r)"), Mode::Kripke,
                        {3, 2, FrameShape::Poset, false});
  EXPECT_FALSE(v.refuted());
  EXPECT_GT(v.models_examined, 0u);
}

TEST(Decide, SingleSuccedent) {
  EXPECT_THROW(decide(seq("p => q, r"), Mode::Kripke, {1, 1, FrameShape::Poset, false}, {1, true}),
               UsageError);
  EXPECT_TRUE(decide(seq("p => q"), Mode::Kripke, {1, 1, FrameShape::Poset, false}, {1, true}).refuted());
}

TEST(Decide, DeterministicAcrossWorkerCounts) {
  for (const char* text : {"not(not(p)) => p", kOrSequent, "forall x. or(p(x), r) => or(forall x. p(x), r)",
                           "=> or(p, not(p))"}) {
    const auto s = seq(text);
    const auto a = decide(s, Mode::Kripke, {3, 2, FrameShape::Poset, false}, {1, false});
    const auto b = decide(s, Mode::Kripke, {3, 2, FrameShape::Poset, false}, {3, false});
    ASSERT_EQ(a.refuted(), b.refuted()) << text;
    EXPECT_EQ(a.models_examined, b.models_examined) << text;
    if (a.refuted()) {
      EXPECT_EQ(write_model(a.countermodel->model), write_model(b.countermodel->model));
      EXPECT_EQ(a.countermodel->witness, b.countermodel->witness);
    }
  }
}

TEST(Decide, ValidVerdictAgreesWithExhaustiveOracle) {
  std::mt19937_64 rng(42);
  const Signature sig = corpus_signature({"not", "and", "or", "imp"});
  const auto corpus = generate_corpus(sig, {9, 40, 2, 2});
  const SearchBounds b{2, 2, FrameShape::Poset, false};
  for (const auto& s : corpus) {
    const auto v = decide(s, Mode::Kripke, b);
    bool any_counter = false;
    enumerate_models(s.predicates(), b, [&](const KripkeModel& k) {
      any_counter = !oracle::validates(k, s);
      return !any_counter;
    });
    EXPECT_EQ(v.refuted(), any_counter) << render(s);
    if (v.refuted()) {
      EXPECT_TRUE(oracle::valid_model(v.countermodel->model));
      EXPECT_FALSE(oracle::eval_sequent(v.countermodel->model, v.countermodel->witness.world,
                                        {v.countermodel->witness.assignment.begin(),
                                         v.countermodel->witness.assignment.end()},
                                        s));
    }
  }
}

TEST(Property, ModeNesting) {
  const Signature sig = corpus_signature({"not", "and", "or", "imp", "xor"});
  const auto corpus = generate_corpus(sig, {77, 60, 3, 2});
  const SearchBounds b{2, 2, FrameShape::Poset, false};
  for (const auto& s : corpus) {
    const bool cl = decide(s, Mode::Classical, b).refuted();
    const bool cd = decide(s, Mode::ConstantDomain, b).refuted();
    const bool kr = decide(s, Mode::Kripke, b).refuted();
    if (cl) EXPECT_TRUE(cd) << render(s);
    if (cd) EXPECT_TRUE(kr) << render(s);
  }
}

TEST(Census, BinaryQuadrants) {
  const auto c = classify_connectives(2);
  EXPECT_EQ(c.total, 16u);
  std::uint64_t expect[2][2] = {{0, 0}, {0, 0}};
  for (std::uint64_t code = 0; code < 16; ++code) {
    const auto f = TruthFunction::from_code(2, code);
    ++expect[oracle::supermultiplicative(f)][oracle::monotonic(f)];
  }
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      EXPECT_EQ(c.counts[a][b], expect[a][b]);
      EXPECT_EQ(c.members[a][b].size(), c.counts[a][b]);
    }
  }
  EXPECT_EQ(c.counts[0][0] + c.counts[0][1], 2u);
  EXPECT_EQ(c.counts[0][1] + c.counts[1][1], 6u);
  std::vector<std::string> nonsm;
  for (int m = 0; m < 2; ++m) {
    for (const auto& f : c.members[0][m]) nonsm.push_back(f.table_bits());
  }
  std::sort(nonsm.begin(), nonsm.end());
  EXPECT_EQ(nonsm, (std::vector<std::string>{"0110", "0111"}));
}

TEST(Census, ArityZeroAndCap) {
  const auto c = classify_connectives(0);
  EXPECT_EQ(c.counts[1][0] + c.counts[1][1], 2u);
  EXPECT_THROW(classify_connectives(5), UsageError);
}

TEST(Relations, Examples) {
  Signature s;
  for (const char* n : {"not", "and", "imp"}) s.add_connective(n, builtin(n));
  auto r = report_relations(s);
  EXPECT_TRUE(r.ils_equals_cds);
  EXPECT_FALSE(r.cds_equals_cls);
  EXPECT_FALSE(r.ils_equals_cls);
  EXPECT_EQ(r.not_monotonic, (std::vector<std::string>{"imp", "not"}));

  Signature a;
  a.add_connective("and", builtin("and"));
  r = report_relations(a);
  EXPECT_TRUE(r.ils_equals_cds && r.cds_equals_cls && r.ils_equals_cls);

  Signature o;
  o.add_connective("or", builtin("or"));
  r = report_relations(o);
  EXPECT_FALSE(r.ils_equals_cds);
  EXPECT_TRUE(r.cds_equals_cls);
  EXPECT_FALSE(r.ils_equals_cls);
  EXPECT_EQ(r.not_supermultiplicative, std::vector<std::string>{"or"});
  EXPECT_FALSE(r.reasons.empty());
}
