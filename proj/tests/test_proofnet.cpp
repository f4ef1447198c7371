#include <doctest.h>

#include <fstream>
#include <sstream>

#include "support/generators.hpp"
#include "tlg/errors.hpp"
#include "tlg/matcher.hpp"
#include "tlg/render.hpp"

using namespace tlg;
using tlg::testing::Rng;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE_MESSAGE(in, path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Sentence sentence(std::vector<std::pair<std::string, std::string>> phrases, const std::string& goal) {
  Sentence s{{}, parse_type(goal)};
  for (auto& [w, t] : phrases) s.phrases.push_back({{w}, parse_type(t)});
  return s;
}

Matching n_matching(Assignment a) {
  return Matching{{{"N", std::move(a)}, {"NP", {0}}, {"SV1", {0}}, {"VNW", {0}}, {"WHQ", {0}}}};
}

}  // namespace

TEST_CASE("running example frame") {
  auto f = build_frame(tlg::testing::running_example());
  using P = Polarity;
  const std::vector<std::tuple<std::string, P, int>> expected = {
      {"VNW", P::Positive, 0}, {"SV1", P::Negative, 0}, {"WHQ", P::Positive, 0},
      {"VNW", P::Negative, 1}, {"NP", P::Negative, 1},  {"SV1", P::Positive, 1},
      {"N", P::Negative, 2},   {"NP", P::Positive, 2},  {"N", P::Negative, 3},
      {"N", P::Positive, 3},   {"N", P::Positive, 4},   {"WHQ", P::Negative, kGoalSource}};
  REQUIRE(f.atoms().size() == expected.size());
  for (std::size_t i = 0; i < expected.size(); ++i) {
    const auto& a = f.atoms()[i];
    CHECK(a.index == static_cast<int>(i));
    CHECK(a.atom == std::get<0>(expected[i]));
    CHECK(a.polarity == std::get<1>(expected[i]));
    CHECK(a.source == std::get<2>(expected[i]));
  }
  CHECK(f.phrase_roots().size() == 6);
  CHECK(f.phrase_roots()[5] == -1);
  CHECK_FALSE(invariance_check(f));
}

TEST_CASE("single phrase frame") {
  auto f = build_frame(sentence({{"tekening", "N"}}, "N"));
  REQUIRE(f.atoms().size() == 2);
  CHECK(f.atoms()[0].polarity == Polarity::Positive);
  CHECK(f.atoms()[1].polarity == Polarity::Negative);
  CHECK(f.atoms()[1].source == kGoalSource);
  auto net = apply_matching(f, Matching{{{"N", {0}}}});
  CHECK(net.links() == std::vector<Link>{{0, 1}});
  Proof p = traverse_to_proof(net);
  CHECK(render_text(p) == "c0 ⊢ c0 : N");
  CHECK(proof_to_net(p, f.sentence()) == net);
}

TEST_CASE("exempt phrases contribute nothing") {
  auto with = build_frame(sentence({{"x", "N"}, {"?", "PUNCT"}}, "N"));
  auto without = build_frame(sentence({{"x", "N"}}, "N"));
  CHECK(with.atoms().size() == without.atoms().size());
  FrameConfig none;
  none.exempt_atoms.clear();
  CHECK(build_frame(sentence({{"x", "N"}, {"?", "PUNCT"}}, "N"), none).atoms().size() == 3);
}

TEST_CASE("invariance report") {
  auto f = build_frame(sentence({{"die", "[det](N -> NP)"}}, "NP"));
  auto report = invariance_check(f);
  REQUIRE(report);
  CHECK(report->entries == std::vector<ImbalanceEntry>{{"N", 0, 1}});
  CHECK(report->describe() == "unbalanced atoms N (0+/1-)");
  auto two = invariance_check(build_frame(sentence({{"a", "A"}, {"b", "B"}}, "C")));
  REQUIRE(two);
  CHECK(two->entries.size() == 3);
}

TEST_CASE("bins of the running example") {
  auto bs = bins(build_frame(tlg::testing::running_example()));
  REQUIRE(bs.size() == 5);
  std::map<std::string, Bin> by;
  for (const auto& b : bs) by[b.atom] = b;
  CHECK(by["N"].positives == std::vector<int>{9, 10});
  CHECK(by["N"].negatives == std::vector<int>{6, 8});
  CHECK(by["SV1"].positives == std::vector<int>{5});
  CHECK(by["SV1"].negatives == std::vector<int>{1});
  CHECK(by["WHQ"].positives == std::vector<int>{2});
  CHECK(by["WHQ"].negatives == std::vector<int>{11});
  for (std::size_t i = 1; i < bs.size(); ++i) CHECK(bs[i - 1].atom < bs[i].atom);
}

TEST_CASE("applying the correct matching gives the frame links") {
  auto f = build_frame(tlg::testing::running_example());
  auto net = apply_matching(f, n_matching({0, 1}));
  CHECK(net.links() == std::vector<Link>{{0, 3}, {2, 11}, {5, 1}, {7, 4}, {9, 6}, {10, 8}});
  CHECK(net.partner_of_positive(9) == 6);
  CHECK(net.partner_of_negative(8) == 10);
  CHECK(matching_of(net) == n_matching({0, 1}));
  CHECK(traverse_to_proof(net) == tlg::testing::golden_proof());
}

TEST_CASE("the swapped matching builds but does not traverse") {
  auto f = build_frame(tlg::testing::running_example());
  auto net = apply_matching(f, n_matching({1, 0}));
  CHECK(net.partner_of_positive(9) == 8);
  CHECK_THROWS_AS(traverse_to_proof(net), CycleError);

  int valid = 0;
  for (const auto& m : tlg::testing::all_matchings(f)) {
    try {
      traverse_to_proof(apply_matching(f, m));
      ++valid;
    } catch (const NetError&) {
    }
  }
  CHECK(valid == 1);
}

TEST_CASE("malformed matchings") {
  auto f = build_frame(tlg::testing::running_example());
  CHECK_THROWS_AS(apply_matching(f, n_matching({0, 0})), BijectionError);
  CHECK_THROWS_AS(apply_matching(f, n_matching({0})), BijectionError);
  CHECK_THROWS_AS(apply_matching(f, n_matching({0, 2})), BijectionError);
  Matching missing = n_matching({0, 1});
  missing.per_atom.erase("NP");
  CHECK_THROWS_AS(apply_matching(f, missing), BijectionError);
  Matching extra = n_matching({0, 1});
  extra.per_atom["Q"] = {0};
  CHECK_THROWS_AS(apply_matching(f, extra), BijectionError);

  CHECK_THROWS_AS(net_from_links(f, {{0, 3}}), BijectionError);
  CHECK_THROWS_AS(net_from_links(f, {{0, 3}, {2, 11}, {5, 1}, {7, 4}, {9, 6}, {10, 4}}), BijectionError);
  CHECK_THROWS_AS(net_from_links(f, {{0, 3}, {2, 11}, {5, 1}, {7, 4}, {9, 6}, {10, 1}}), BijectionError);
  CHECK_THROWS_AS(net_from_links(f, {{0, 3}, {2, 11}, {5, 1}, {7, 4}, {9, 6}, {6, 8}}), BijectionError);
}

TEST_CASE("disconnected and unsupported nets") {
  // The abstraction's hypothesis is linked from outside its scope.
  auto f = build_frame(
      sentence({{"f", "(A -> B) -> C -> D"}, {"g", "A -> C"}, {"b", "B"}}, "D"));
  REQUIRE_FALSE(invariance_check(f));
  CHECK_THROWS_AS(traverse_to_proof(apply_matching(f, tlg::testing::all_matchings(f).front())),
                  DisconnectedError);

  // A phrase that only feeds itself.
  auto loop = build_frame(sentence({{"a", "A"}, {"k", "B -> B"}}, "A"));
  REQUIRE_FALSE(invariance_check(loop));
  CHECK_THROWS_AS(traverse_to_proof(apply_matching(loop, tlg::testing::all_matchings(loop).front())),
                  NetError);

  auto dia = build_frame(sentence({{"a", "<su>A"}}, "A"));
  CHECK_THROWS_AS(traverse_to_proof(apply_matching(dia, {{{"A", {0}}}})), UnsupportedNetError);
  auto box = build_frame(sentence({{"f", "[mod]A -> B"}, {"a", "A"}}, "B"));
  CHECK_THROWS_AS(traverse_to_proof(apply_matching(box, {{{"A", {0}}, {"B", {0}}}})),
                  UnsupportedNetError);
}

TEST_CASE("goal inference") {
  auto s = tlg::testing::running_example();
  CHECK(infer_goal(s.phrases) == parse_type("WHQ"));
  CHECK_FALSE(infer_goal({{{"a"}, parse_type("A")}, {{"b"}, parse_type("B")}}));
  CHECK_FALSE(infer_goal({{{"a"}, parse_type("A -> A")}}));
  CHECK(infer_goal({{{"a"}, parse_type("A")}, {{"f"}, parse_type("A -> B")}}) == parse_type("B"));
}

TEST_CASE("proof to net on the golden proof") {
  Proof p = tlg::testing::golden_proof();
  auto s = tlg::testing::running_example();
  auto net = proof_to_net(p, s);
  CHECK(matching_of(net) == n_matching({0, 1}));
  CHECK(traverse_to_proof(net) == p);
  // Without a sentence the phrases are rebuilt from the Lex leaves.
  auto bare = proof_to_net(p);
  CHECK(bare.frame().sentence().phrases.size() == 5);
  CHECK(matching_of(bare) == n_matching({0, 1}));
  CHECK(traverse_to_proof(bare) == p);

  auto wrong_goal = s;
  wrong_goal.goal = parse_type("NP");
  CHECK_THROWS_AS(proof_to_net(p, wrong_goal), Error);
  auto wrong_type = s;
  wrong_type.phrases[4].type = parse_type("NP");
  CHECK_THROWS_AS(proof_to_net(p, wrong_type), Error);
}

TEST_CASE("net JSON matches the golden file byte for byte") {
  const std::string golden = slurp(TLG_GOLDEN "/running_example.net.json");
  auto net = proof_to_net(tlg::testing::golden_proof(), tlg::testing::running_example());
  CHECK(write_net_json(net) == golden);
  auto back = read_net_json(golden);
  CHECK(back == net);
  CHECK(write_net_json(back) == golden);
}

TEST_CASE("proof file matches the golden file byte for byte") {
  const std::string golden = slurp(TLG_GOLDEN "/running_example.proof");
  CHECK(write_proof(tlg::testing::golden_proof()) == golden);
  CHECK(read_proof(golden) == tlg::testing::golden_proof());
}

TEST_CASE("net JSON reader validates its input") {
  CHECK_THROWS_AS(read_net_json("{"), FormatError);
  CHECK_THROWS_AS(read_net_json("[]"), FormatError);
  CHECK_THROWS_AS(read_net_json(R"({"goal":"N","phrases":[{"words":["x"],"type":"N"}]})"),
                  FormatError);
  CHECK_THROWS_AS(
      read_net_json(R"({"goal":"N","phrases":[{"words":["x"],"type":"N ->"}],"links":[[0,1]]})"),
      SyntaxError);
  CHECK_THROWS_AS(
      read_net_json(R"({"goal":"N","phrases":[{"words":["x"],"type":"N"}],"links":[[0,0]]})"),
      BijectionError);
  auto net = read_net_json(R"({"goal":"N","phrases":[{"words":"x","type":"N"}],"links":[[0,1]]})");
  CHECK(net.frame().sentence().phrases[0].words == std::vector<std::string>{"x"});
}

TEST_CASE("generated proofs round trip through nets") {
  Rng rng(23);
  for (int i = 0; i < 1000; ++i) {
    auto g = tlg::testing::random_proof(rng);
    auto net = proof_to_net(g.proof, g.sentence);
    REQUIRE_FALSE(invariance_check(net.frame()));
    Proof back = traverse_to_proof(net);
    REQUIRE(back == g.proof);
    REQUIRE(proof_to_net(back, g.sentence) == net);
    REQUIRE(read_net_json(write_net_json(net)) == net);
  }
}

TEST_CASE("every valid net of small frames round trips") {
  Rng rng(29);
  int frames = 0, nets = 0;
  while (frames < 150) {
    auto g = tlg::testing::random_proof(rng);
    auto f = build_frame(g.sentence);
    if (search_space(f) > 720) continue;
    ++frames;
    for (const auto& m : tlg::testing::all_matchings(f)) {
      auto net = apply_matching(f, m);
      std::optional<Proof> p;
      try {
        p = traverse_to_proof(net);
      } catch (const Error&) {
        continue;
      }
      ++nets;
      REQUIRE_NOTHROW(check(*p));
      REQUIRE(is_beta_eta_normal(p->term()));
      REQUIRE(proof_to_net(*p, g.sentence) == net);
    }
  }
  CHECK(nets >= frames);
}
