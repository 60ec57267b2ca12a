#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include "cli.hpp"
#include "fok/model_io.hpp"
#include "fok/synthesize.hpp"

namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "--no-timing");
  std::ostringstream out;
  std::ostringstream err;
  const int code = fok::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

class TempDir {
 public:
  TempDir() {
    path_ = fs::temp_directory_path() / ("fok_cli_" + std::to_string(::getpid()) + "_" +
                                         std::to_string(counter_++));
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  std::string write(const std::string& name, const std::string& text) const {
    const auto p = path_ / name;
    std::ofstream(p) << text;
    return p.string();
  }
  std::string path(const std::string& name) const { return (path_ / name).string(); }

 private:
  static inline int counter_ = 0;
  fs::path path_;
};

const char* kChain =
    "predicate p 1\n"
    "worlds r a b\n"
    "elements e1 e2\n"
    "order r a\n"
    "order r b\n"
    "domain r e1\n"
    "domain a e1 e2\n"
    "domain b e1\n"
    "fact a p e2\n";

}  // namespace

TEST(Cli, AnalyzeOr) {
  const auto r = run({"analyze-connective", "--builtin", "or"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out,
            "connective: or\narity: 2\ntable: 0111\nsupermultiplicative: no\n"
            "witness: (0,1) (1,0)\nmonotonic: yes\n");
  EXPECT_EQ(r.err, "");
}

TEST(Cli, AnalyzeTableAndJson) {
  EXPECT_NE(run({"analyze-connective", "--table", "0001"}).out.find("supermultiplicative: yes"),
            std::string::npos);
  TempDir dir;
  const auto file = dir.write("c.json", R"({"arity": 2, "table": "0110"})");
  const auto r = run({"analyze-connective", "--connective", file, "--name", "x"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("connective: x\n"), std::string::npos);
  EXPECT_NE(r.out.find("monotonic: no"), std::string::npos);
  const auto bad = dir.write("bad.json", R"({"arity": 2, "table": "011"})");
  EXPECT_EQ(run({"analyze-connective", "--connective", bad}).code, 3);
  EXPECT_EQ(run({"analyze-connective", "--connective", dir.write("x.json", "{")}).code, 2);
}

TEST(Cli, DecideExitCodes) {
  const std::string or_seq =
      "forall x. or(p(x), q(x)) => or(forall x. p(x), exists x. q(x))";
  auto cd = run({"decide", "--mode", "cd", "--max-worlds", "3", "--max-domain", "2", "--sequent",
                 or_seq});
  EXPECT_EQ(cd.code, 0);
  EXPECT_EQ(cd.out.rfind("ValidUpToBounds", 0), 0u);
  auto kr = run({"decide", "--mode", "kripke", "--sequent", or_seq});
  EXPECT_EQ(kr.code, 1);
  // The countermodel output is itself a loadable model file.
  EXPECT_NO_THROW(fok::parse_model(kr.out));
  EXPECT_NE(kr.out.find("# Refuted"), std::string::npos);

  TempDir dir;
  const auto seq = dir.write("s.seq", "not(not(r)) => r\n");
  EXPECT_EQ(run({"decide", "--seq", seq}).code, 1);
  EXPECT_EQ(run({"decide", "--mode", "classical", "--seq", seq}).code, 0);
  EXPECT_EQ(run({"decide", "--mode", "weird", "--seq", seq}).code, 2);
  EXPECT_EQ(run({"decide", "--max-worlds", "99", "--seq", seq}).code, 2);
  EXPECT_EQ(run({"decide", "--sequent", "p(x) => q("}).code, 2);
  EXPECT_EQ(run({"decide"}).code, 2);
  EXPECT_EQ(run({"decide", "--seq", dir.path("missing")}).code, 2);
  EXPECT_EQ(run({"decide", "--single-succedent", "--sequent", "r => r, r"}).code, 0);
  EXPECT_EQ(run({"decide", "--single-succedent", "--sequent", "r => q(x), r"}).code, 2);
}

TEST(Cli, UsageAndHelp) {
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  EXPECT_EQ(run({"census", "--arity", "x"}).code, 2);
  const auto h = run({"--help"});
  EXPECT_EQ(h.code, 0);
  EXPECT_NE(h.out.find("decide"), std::string::npos);
  EXPECT_EQ(run({"decide", "--help"}).code, 0);
}

TEST(Cli, SynthesizeXor) {
  TempDir dir;
  const auto out = dir.path("cert.txt");
  const auto r = run({"synthesize", "--builtin", "xor", "--no-cd", "--out", out});
  EXPECT_EQ(r.code, 0);
  std::ifstream in(out);
  std::stringstream ss;
  ss << in.rdbuf();
  EXPECT_EQ(ss.str(), fok::render(fok::synthesize("xor", fok::builtin("xor"), [] {
                                    fok::SynthesisOptions o;
                                    o.run_cd_search = false;
                                    return o;
                                  }())));
  EXPECT_EQ(run({"synthesize", "--builtin", "and"}).code, 2);
  const auto cd = run({"synthesize", "--connective", "or", "--cd-bounds", "2", "2"});
  EXPECT_EQ(cd.code, 0);
  EXPECT_NE(cd.out.find("cd-search: ValidUpToBounds"), std::string::npos);
}

TEST(Cli, UnravelCompleteAndLemma) {
  TempDir dir;
  const auto model = dir.write("k.model", kChain);
  const auto u = run({"unravel", "--strict", model});
  ASSERT_EQ(u.code, 0) << u.err;
  const auto tree = fok::parse_model_document(u.out);
  EXPECT_EQ(tree.model.world_count(), 3u);
  EXPECT_EQ(run({"unravel", model}).code, 2);
  EXPECT_EQ(run({"unravel", "--stutter", "2", model}).code, 0);

  const auto tree_file = dir.write("t.model", u.out);
  const auto c = run({"complete", tree_file});
  ASSERT_EQ(c.code, 0) << c.err;
  const auto completed = fok::parse_model(c.out);
  EXPECT_TRUE(fok::validate_model(completed).empty());
  EXPECT_TRUE(fok::is_constant_domain(completed));

  const auto l = run({"check-main-lemma", tree_file, "exists x. p(x)"});
  EXPECT_EQ(l.code, 0) << l.err;
  EXPECT_NE(l.out.find("\"outcome\""), std::string::npos);
  EXPECT_EQ(run({"check-main-lemma", tree_file, "p(x)"}).code, 2);
  EXPECT_EQ(run({"check-main-lemma", tree_file, "p(x)", "--assign", "x=e1"}).code, 0);

  // Not a tree: two roots.
  const auto bad = dir.write("bad.model", "worlds u v\nelements a\ndomain u a\ndomain v a\n");
  EXPECT_EQ(run({"complete", bad}).code, 3);
  EXPECT_EQ(run({"unravel", "--strict", dir.write("junk.model", "bogus line\n")}).code, 2);
}

TEST(Cli, CensusAndRelations) {
  const auto c = run({"census", "--arity", "2"});
  EXPECT_EQ(c.code, 0);
  EXPECT_NE(c.out.find("total: 16\n"), std::string::npos);
  EXPECT_NE(c.out.find("supermultiplicative: 14\n"), std::string::npos);
  EXPECT_EQ(run({"census", "--arity", "5"}).code, 2);
  const auto r = run({"report-relations", "--connectives", "and,or"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("ILS=CDS: false\nCDS=CLS: true\nILS=CLS: false\n"), std::string::npos);
  EXPECT_EQ(run({"report-relations"}).code, 2);
}

TEST(Cli, DeterministicOutput) {
  const std::vector<std::string> args{"--seed", "4", "corpus", "--size", "30"};
  const auto a = run(args);
  const auto b = run(args);
  EXPECT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  const std::vector<std::string> dec{"decide", "--max-worlds", "3", "--sequent",
                                     "forall x. or(p(x), q(x)) => or(forall x. p(x), exists x. q(x))"};
  std::vector<std::string> dec2 = dec;
  dec2.insert(dec2.begin(), {"--workers", "3"});
  EXPECT_EQ(run(dec).out, run(dec2).out);
}

TEST(Cli, TimingLine) {
  std::ostringstream out;
  std::ostringstream err;
  ::unsetenv("FOK_NO_TIMING");
  EXPECT_EQ(fok::cli::run({"census", "--arity", "1"}, out, err), 0);
  EXPECT_EQ(err.str().rfind("time: ", 0), 0u);
  std::ostringstream out2;
  std::ostringstream err2;
  ::setenv("FOK_NO_TIMING", "1", 1);
  fok::cli::run({"census", "--arity", "1"}, out2, err2);
  EXPECT_EQ(err2.str(), "");
  EXPECT_EQ(out.str(), out2.str());
  ::setenv("FOK_NO_TIMING", "0", 1);
  std::ostringstream out3;
  std::ostringstream err3;
  fok::cli::run({"census", "--arity", "1"}, out3, err3);
  EXPECT_FALSE(err3.str().empty());
  ::unsetenv("FOK_NO_TIMING");
}
