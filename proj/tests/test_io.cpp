#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "partcat/cli.hpp"
#include "partcat/io.hpp"
#include "partcat/repn.hpp"

using namespace partcat;

namespace {

const FieldSpec kQ = FieldSpec::rationals();

std::filesystem::path write_temp(const std::string& name, const std::string& content) {
  std::filesystem::path p = std::filesystem::temp_directory_path() / name;
  std::ofstream out(p);
  out << content;
  return p;
}

// Runs the command line with captured streams; assertions must happen after
// the call so test failures are not swallowed by the redirect.
int run_cli(const std::vector<std::string>& args, std::string* out = nullptr,
            std::string* err = nullptr) {
  std::vector<const char*> argv;
  argv.push_back("jpcat");
  for (const std::string& a : args) argv.push_back(a.c_str());
  std::ostringstream cout_cap, cerr_cap;
  std::streambuf* old_out = std::cout.rdbuf(cout_cap.rdbuf());
  std::streambuf* old_err = std::cerr.rdbuf(cerr_cap.rdbuf());
  int rc = run(static_cast<int>(argv.size()), argv.data());
  std::cout.rdbuf(old_out);
  std::cerr.rdbuf(old_err);
  if (out) *out = cout_cap.str();
  if (err) *err = cerr_cap.str();
  return rc;
}

const char* kMuFile =
    "field Q\n"
    "n 2\n"
    "type 2 -> 1\n"
    "1 * P(2->1)[{1,2,1'}]\n";

const char* kVanishingFile =
    "field Q\n"
    "n 2\n"
    "type 3 -> 0\n"
    "1 * P(3->0)[{1},{2},{3}]\n"
    "-1 * P(3->0)[{1,3},{2}]\n"
    "-1 * P(3->0)[{1,2},{3}]\n"
    "-1 * P(3->0)[{1},{2,3}]\n"
    "2 * P(3->0)[{1,2,3}]\n";

}  // namespace

TEST_CASE("parse_diagram_round_trips") {
  PartitionDiagram d = PartitionDiagram::of_blocks(2, 1, {{1, 3}, {2}});
  CHECK(parse_diagram(d.to_string()) == d);
  CHECK(parse_diagram("P(2->1)[{1,1'},{2}]") == d);
  CHECK(parse_diagram("P(0->0)[]") == PartitionDiagram::empty());
  Rng rng(50);
  for (int t = 0; t < 40; ++t) {
    PartitionDiagram r = random_diagram(rng, rng.uniform_int(0, 4), rng.uniform_int(0, 4));
    CHECK(parse_diagram(r.to_string()) == r);
  }
}

TEST_CASE("parse_diagram_reports_position_on_malformed_input") {
  CHECK_THROWS_AS(parse_diagram("P(2->1)[{1,2}]"), parse_error);       // vertex missing
  CHECK_THROWS_AS(parse_diagram("P(2->1)[{1,2,3'}]"), parse_error);    // prime too large
  CHECK_THROWS_AS(parse_diagram("Q(2->1)[{1,2,1'}]"), parse_error);    // wrong grammar
  try {
    parse_diagram("P(2->1)");
    CHECK(false);
  } catch (const parse_error& e) {
    CHECK(e.line >= 1);
    CHECK(e.col >= 1);
  }
}

TEST_CASE("parse_jelly_diagram_canonicalizes") {
  // legs out of order come back sorted with the sign reported
  Canonical c = parse_jelly_diagram("JP(2->0; n=2)[{1},{2}]J(#2,#1)");
  CHECK_FALSE(c.zero);
  CHECK(c.sign == -1);
  CHECK(c.diagram.jellies == std::vector<std::vector<int>>{{0, 1}});

  // dangling leg
  Canonical d = parse_jelly_diagram("JP(2->0; n=3)[{1},{2}]J(#1,#2,_)");
  CHECK_FALSE(d.zero);
  CHECK(d.diagram.blocks == std::vector<std::vector<int>>{{1}, {2}});
  CHECK(d.diagram.jellies == std::vector<std::vector<int>>{{0, 1, kDangling}});

  // junction block shared by two jellyfish
  Canonical jn = parse_jelly_diagram("JP(0->0; n=2)[{}]J(#1,_)J(#1,_)");
  CHECK_FALSE(jn.zero);
  CHECK(jn.diagram.blocks == std::vector<std::vector<int>>{{}});
  CHECK(jn.diagram.jellies ==
        std::vector<std::vector<int>>{{0, kDangling}, {0, kDangling}});

  // two legs on one block annihilate
  CHECK(parse_jelly_diagram("JP(2->0; n=2)[{1,2}]J(#1,#1)").zero);

  Rng rng(51);
  for (int t = 0; t < 40; ++t) {
    JellyMorphism m = random_jelly_morphism(rng, rng.uniform_int(0, 3), 0, kQ, 2, 1, 1);
    for (const auto& [dg, coef] : m.terms) {
      Canonical back = parse_jelly_diagram(dg.to_string());
      CHECK_FALSE(back.zero);
      CHECK(back.sign == 1);
      CHECK(back.diagram == dg);
    }
  }
}

TEST_CASE("morphism_files_round_trip") {
  Morphism mu = parse_morphism_text(kMuFile);
  CHECK(mu.bottom == 2);
  CHECK(mu.top == 1);
  CHECK(mu.n_param == 2);
  CHECK(mu.field == kQ);
  CHECK(mu == Morphism::of_diagram(gen_mu(), kQ, 2));
  CHECK(print_morphism(mu) == kMuFile);

  // zero morphism
  Morphism z = parse_morphism_text("field Q\nn 2\ntype 1 -> 1\n0-morphism\n");
  CHECK(z.is_zero());
  CHECK(print_morphism(z) == "field Q\nn 2\ntype 1 -> 1\n0-morphism\n");

  Rng rng(52);
  for (int t = 0; t < 30; ++t) {
    Morphism m = random_morphism(rng, rng.uniform_int(0, 3), rng.uniform_int(0, 2), kQ, 3, 4);
    CHECK(parse_morphism_text(print_morphism(m)) == m);
  }
  FieldSpec f5 = FieldSpec::prime_field(5);
  Rng rng5(53);
  for (int t = 0; t < 20; ++t) {
    JellyMorphism m = random_jelly_morphism(rng5, rng5.uniform_int(0, 3), 0, f5, 2, 3, 2);
    CHECK(parse_jelly_morphism_text(print_jelly_morphism(m)) == m);
  }
}

TEST_CASE("morphism_files_reject_inconsistencies") {
  // term type differs from the header
  CHECK_THROWS_AS(
      parse_morphism_text("field Q\nn 2\ntype 2 -> 2\n1 * P(2->1)[{1,2,1'}]\n"),
      parse_error);
  // jellyfish header repeats a different n
  CHECK_THROWS_AS(parse_jelly_morphism_text(
                      "field Q\nn 2\ntype 2 -> 0\n1 * JP(2->0; n=3)[{1},{2}]J(#1,#2)\n"),
                  parse_error);
  // denominator divisible by the characteristic
  CHECK_THROWS_AS(parse_morphism_text("field F5\nn 2\ntype 1 -> 0\n1/5 * P(1->0)[{1}]\n"),
                  parse_error);
  // fractions with invertible denominators are fine over a prime field
  Morphism half = parse_morphism_text("field F5\nn 2\ntype 1 -> 0\n1/2 * P(1->0)[{1}]\n");
  CHECK(half.terms.begin()->second == Scalar::of_integer(FieldSpec::prime_field(5), 3));
  // pure parser refuses jellyfish terms
  CHECK_THROWS_AS(parse_morphism_text(
                      "field Q\nn 2\ntype 2 -> 0\n1 * JP(2->0; n=2)[{1},{2}]J(#1,#2)\n"),
                  type_mismatch_error);
  // p = 2 collapses the sign calculus; rejected while reading the header
  CHECK_THROWS_AS(parse_morphism_text("field F2\nn 2\ntype 1 -> 0\n1 * P(1->0)[{1}]\n"),
                  parse_error);
}

TEST_CASE("matrix_json_layout") {
  Morphism mu = parse_morphism_text(kMuFile);
  CHECK(print_matrix_json(phi_morphism(mu)) ==
        R"({"n":2,"k":2,"l":1,"field":"Q","rows":2,"cols":4,"entries":[[1,1,"1"],[2,4,"1"]]})");
}

TEST_CASE("rng_is_deterministic_and_bounded") {
  Rng a(7), b(7);
  for (int t = 0; t < 100; ++t) CHECK(a.next_below(1000) == b.next_below(1000));
  Rng c(8);
  for (int t = 0; t < 200; ++t) {
    std::uint64_t v = c.next_below(17);
    CHECK(v < 17);
    int w = c.uniform_int(-3, 5);
    CHECK(w >= -3);
    CHECK(w <= 5);
  }
  CHECK(Rng(9).next_below(1) == 0);
  // different seeds diverge quickly
  Rng d(10), e(11);
  bool differ = false;
  for (int t = 0; t < 10; ++t) differ |= d.next_below(1 << 30) != e.next_below(1 << 30);
  CHECK(differ);
}

TEST_CASE("random_generators_produce_valid_objects") {
  Rng rng(54);
  for (int t = 0; t < 50; ++t) {
    int m = rng.uniform_int(0, 5);
    SetPartition p = random_set_partition(rng, m);
    CHECK(p.ground_size == m);
    CHECK(p == SetPartition::of(m, p.blocks));  // already canonical

    int k = rng.uniform_int(0, 3), l = rng.uniform_int(0, 3);
    PartitionDiagram d = random_diagram(rng, k, l);
    CHECK(d.bottom == k);
    CHECK(d.top == l);

    JellyMorphism jm = random_jelly_morphism(rng, k, l, kQ, 2, 3, 2);
    CHECK(jm.terms.size() <= 3);
    for (const auto& [jd, coef] : jm.terms) {
      CHECK_FALSE(coef.is_zero());
      CHECK(jd.jelly_count() <= 2);
      Canonical back = parse_jelly_diagram(jd.to_string());
      CHECK_FALSE(back.zero);
      CHECK(back.sign == 1);  // stored diagrams are canonical
      CHECK(back.diagram == jd);
    }
  }
}

TEST_CASE("cli_dimension_tables") {
  std::string out;
  CHECK(run_cli({"dims", "--n", "3", "--max", "3"}, &out) == 0);
  CHECK(out.find("bell numbers: B(0)=1 B(1)=1 B(2)=2 B(3)=5") != std::string::npos);
  CHECK(out.find("\t1\t3\t9") != std::string::npos);  // row k=1 of the grid

  std::string js;
  CHECK(run_cli({"dims", "--n", "3", "--max", "3", "--json"}, &js) == 0);
  auto parsed = nlohmann::json::parse(js);
  CHECK(parsed["n"] == 3);
  CHECK(parsed["hom_dim"][1][1] == "3");
  CHECK(parsed["bell"][3] == "5");
  CHECK(parsed["stirling2"][3][2] == "3");
}

TEST_CASE("cli_reduce_kills_the_vanishing_combination") {
  auto file = write_temp("partcat_vanishing.txt", kVanishingFile);
  std::string out;
  CHECK(run_cli({"reduce", "--n", "2", file.string()}, &out) == 0);
  CHECK(out == "field Q\nn 2\ntype 3 -> 0\n0-morphism\n");
}

TEST_CASE("cli_matrix_output") {
  auto file = write_temp("partcat_mu.txt", kMuFile);
  std::string out;
  CHECK(run_cli({"psi", "--n", "2", file.string()}, &out) == 0);
  CHECK(out ==
        "{\"n\":2,\"k\":2,\"l\":1,\"field\":\"Q\",\"rows\":2,\"cols\":4,"
        "\"entries\":[[1,1,\"1\"],[2,4,\"1\"]]}\n");
}

TEST_CASE("cli_compose_and_xbasis") {
  auto mu = write_temp("partcat_mu2.txt", kMuFile);
  auto delta = write_temp("partcat_delta.txt",
                          "field Q\nn 2\ntype 1 -> 2\n1 * P(1->2)[{1,1',2'}]\n");
  std::string out;
  CHECK(run_cli({"compose", mu.string(), delta.string()}, &out) == 0);
  CHECK(out == "field Q\nn 2\ntype 1 -> 1\n1 * P(1->1)[{1,1'}]\n");

  // x-basis coordinates invert
  auto v = write_temp("partcat_v.txt", kVanishingFile);
  std::string coords;
  CHECK(run_cli({"xbasis", v.string()}, &coords) == 0);
  auto back = write_temp("partcat_back.txt", coords);
  std::string again;
  CHECK(run_cli({"xbasis", "--inverse", back.string()}, &again) == 0);
  CHECK(parse_morphism_text(again) == parse_morphism_text(kVanishingFile));
}

TEST_CASE("cli_exit_codes") {
  std::string out, err;
  // 2: unreadable input
  CHECK(run_cli({"reduce", "/nonexistent/morphism.txt"}, &out, &err) == 2);
  // 2: parse failure
  auto bad = write_temp("partcat_bad.txt", "field Q\nn 2\ntype 1 ->\n");
  CHECK(run_cli({"reduce", bad.string()}, &out, &err) == 2);
  CHECK(err.find("parse error") != std::string::npos);
  // 3: --n contradicts the file
  auto mu = write_temp("partcat_mu3.txt", kMuFile);
  CHECK(run_cli({"reduce", "--n", "3", mu.string()}, &out, &err) == 3);
  // 3: --field contradicts the file
  CHECK(run_cli({"reduce", "--field", "F5", mu.string()}, &out, &err) == 3);
  // 4: reduction impossible in small characteristic
  auto charbad = write_temp("partcat_charbad.txt",
                            "field F3\nn 4\ntype 1 -> 0\n1 * JP(1->0; n=4)[{1}]J(#1,_,_,_)\n");
  CHECK(run_cli({"reduce", charbad.string()}, &out, &err) == 4);
  // 5: desk-scale cap, lifted by --unsafe-large
  CHECK(run_cli({"dims", "--n", "6", "--max", "2"}, &out, &err) == 5);
  CHECK(run_cli({"dims", "--n", "6", "--max", "2", "--unsafe-large"}, &out, &err) == 0);
  // 64: usage errors
  CHECK(run_cli({"frobnicate"}, &out, &err) == 64);
  CHECK(run_cli({"dims"}, &out, &err) == 64);  // missing required --n
  // 0: help
  CHECK(run_cli({"--help"}, &out, &err) == 0);
  CHECK(run_cli({"reduce", "--help"}, &out, &err) == 0);
}

TEST_CASE("cli_bases_and_orbits") {
  std::string out;
  CHECK(run_cli({"bases", "--n", "2", "--k", "3", "--json"}, &out) == 0);
  auto parsed = nlohmann::json::parse(out);
  CHECK(parsed["basis"].size() == 8);  // hom dimension at n=2, k=3

  std::string orbits;
  CHECK(run_cli({"orbits", "--n", "3", "--k", "1"}, &orbits) == 0);
  CHECK(orbits.find("O[{1}] size=3") != std::string::npos);
}
