#include "partcat/cli.hpp"

#include <algorithm>
#include <fstream>
#include <future>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "partcat/diagram.hpp"
#include "partcat/foundations.hpp"
#include "partcat/io.hpp"
#include "partcat/jellycat.hpp"
#include "partcat/pcat.hpp"
#include "partcat/repn.hpp"
#include "partcat/verify.hpp"

namespace partcat {

namespace {

constexpr int kCapN = 5;
constexpr int kCapStrands = 8;
constexpr std::uint64_t kDefaultSeed = 20260818;

FieldSpec field_from_flag(const std::string& s) {
  if (s == "Q") return FieldSpec::rationals();
  // The CLI11 validator guarantees the F<p> shape.
  return FieldSpec::prime_field(static_cast<std::uint32_t>(std::stoul(s.substr(1))));
}

void cap_n(int n, bool unsafe) {
  if (!unsafe && n > kCapN)
    throw cap_exceeded_error("n=" + std::to_string(n) + " exceeds the desk cap " +
                             std::to_string(kCapN) + " (override with --unsafe-large)");
}

void cap_strands(int strands, bool unsafe) {
  if (!unsafe && strands > kCapStrands)
    throw cap_exceeded_error(std::to_string(strands) + " strands exceed the desk cap " +
                             std::to_string(kCapStrands) +
                             " (override with --unsafe-large)");
}

void cap_morphism(const JellyMorphism& m, bool unsafe) {
  cap_n(m.n_param, unsafe);
  cap_strands(m.bottom + m.top, unsafe);
}

JellyMorphism read_jelly(const std::string& path) {
  if (path == "-") return parse_jelly_morphism(std::cin);
  std::ifstream in(path);
  if (!in) throw parse_error("cannot open " + path, 0, 0);
  return parse_jelly_morphism(in);
}

Morphism read_pure(const std::string& path) {
  if (path == "-") return parse_morphism(std::cin);
  std::ifstream in(path);
  if (!in) throw parse_error("cannot open " + path, 0, 0);
  return parse_morphism(in);
}

// --n / --field on file-reading commands assert the file header.
void assert_header(int n_flag, const std::string& field_flag, int n, FieldSpec f) {
  if (n_flag > 0 && n_flag != n)
    throw type_mismatch_error("file has n=" + std::to_string(n) + " but --n " +
                              std::to_string(n_flag) + " was given");
  if (!field_flag.empty() && field_from_flag(field_flag) != f)
    throw field_mismatch_error("file is over " + f.to_string() + " but --field " +
                               field_flag + " was given");
}

std::string dims_text(int n, int max) {
  std::ostringstream out;
  out << "n " << n << ", k+l <= " << max << "\n";
  out << "bell numbers:";
  for (int m = 0; m <= max; ++m) out << " B(" << m << ")=" << bell(m).str();
  out << "\n";
  out << "stirling2(m,p) by row:\n";
  for (int m = 0; m <= max; ++m) {
    out << "  m=" << m << ":";
    for (int p = 0; p <= m; ++p) out << " " << stirling2(m, p).str();
    out << "\n";
  }
  out << "hom dimension grid (rows k, columns l):\n";
  out << "  k\\l";
  for (int l = 0; l <= max; ++l) out << "\t" << l;
  out << "\n";
  for (int k = 0; k <= max; ++k) {
    out << "  " << k;
    for (int l = 0; l + k <= max; ++l) out << "\t" << hom_dim(n, k, l).str();
    out << "\n";
  }
  return out.str();
}

std::string dims_json(int n, int max) {
  nlohmann::ordered_json j;
  j["n"] = n;
  j["max"] = max;
  nlohmann::ordered_json bells = nlohmann::ordered_json::array();
  for (int m = 0; m <= max; ++m) bells.push_back(bell(m).str());
  j["bell"] = std::move(bells);
  nlohmann::ordered_json stirling = nlohmann::ordered_json::array();
  for (int m = 0; m <= max; ++m) {
    nlohmann::ordered_json row = nlohmann::ordered_json::array();
    for (int p = 0; p <= m; ++p) row.push_back(stirling2(m, p).str());
    stirling.push_back(std::move(row));
  }
  j["stirling2"] = std::move(stirling);
  nlohmann::ordered_json grid = nlohmann::ordered_json::array();
  for (int k = 0; k <= max; ++k) {
    nlohmann::ordered_json row = nlohmann::ordered_json::array();
    for (int l = 0; l + k <= max; ++l) row.push_back(hom_dim(n, k, l).str());
    grid.push_back(std::move(row));
  }
  j["hom_dim"] = std::move(grid);
  return j.dump(2);
}

std::string orbits_text(int n, int k) {
  std::ostringstream out;
  out << "orbit classes on tuples of V^" << k << " at n=" << n << "\n";
  for (const auto& cls : classify_orbits(n, k)) {
    out << cls.label << " size=" << cls.members.size() << " members:";
    for (long long r : cls.members) out << " " << TensorIndex::of_rank(r, n, k).to_string();
    out << "\n";
  }
  return out.str();
}

std::string orbits_json(int n, int k) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& cls : classify_orbits(n, k)) {
    nlohmann::ordered_json jc;
    jc["label"] = cls.label;
    jc["size"] = cls.members.size();
    nlohmann::ordered_json mem = nlohmann::ordered_json::array();
    for (long long r : cls.members) mem.push_back(TensorIndex::of_rank(r, n, k).to_string());
    jc["members"] = std::move(mem);
    arr.push_back(std::move(jc));
  }
  nlohmann::ordered_json j;
  j["n"] = n;
  j["k"] = k;
  j["classes"] = std::move(arr);
  return j.dump(2);
}

std::string bases_text(int n, int k) {
  std::ostringstream out;
  for (const auto& d : jelly_basis(n, k)) out << d.to_string() << "\n";
  return out.str();
}

std::string bases_json(int n, int k) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& d : jelly_basis(n, k)) arr.push_back(d.to_string());
  nlohmann::ordered_json j;
  j["n"] = n;
  j["k"] = k;
  j["basis"] = std::move(arr);
  return j.dump(2);
}

// Morphism-format output where each coefficient multiplies the x-basis
// element of the printed diagram.
std::string print_x_coordinates(int bottom, int top, FieldSpec f, int n,
                                const std::map<PartitionDiagram, Scalar>& coords) {
  Morphism carrier = Morphism::zero(bottom, top, f, n);
  carrier.terms = coords;
  return print_morphism(carrier);
}

struct VerifyJob {
  std::string name;
  std::function<SuiteReport()> job;
};

int run_verify(int n_flag, const std::string& field_flag, std::uint64_t seed, int max,
               int threads, bool json, bool unsafe, std::vector<std::string> suites) {
  FieldSpec f = field_flag.empty() ? FieldSpec::rationals() : field_from_flag(field_flag);
  std::vector<int> ns;
  if (n_flag > 0) {
    cap_n(n_flag, unsafe);
    ns.push_back(n_flag);
  } else {
    ns = {2, 3};
  }
  cap_strands(max, unsafe);
  if (suites.empty())
    suites = {"relations", "phi-kernel", "fullness", "faithfulness", "golden",
              "associativity"};

  std::vector<VerifyJob> jobs;
  for (int n : ns) {
    for (const auto& s : suites) {
      if (s == "relations") {
        jobs.push_back({s, [=] { return check_relations(n, f); }});
      } else if (s == "phi-kernel") {
        for (int k = 0; k <= max; ++k)
          for (int l = 0; k + l <= max; ++l) {
            if (k + l == 0) continue;
            jobs.push_back({s, [=] { return check_phi_kernel(n, k, l); }});
          }
      } else if (s == "fullness") {
        for (int k = 0; k <= max; ++k)
          for (int l = 0; k + l <= max; ++l) {
            if (k + l == 0) continue;
            jobs.push_back({s, [=] { return check_fullness(n, k, l); }});
          }
      } else if (s == "faithfulness") {
        for (int k = 1; k <= max; ++k)
          jobs.push_back({s, [=] { return check_faithfulness(n, k, seed); }});
      } else if (s == "golden") {
        jobs.push_back({s, [=] { return golden_examples(n); }});
      } else if (s == "associativity") {
        jobs.push_back({s, [=] { return check_associativity(n, std::min(max, 2), seed); }});
      }
    }
  }

  std::vector<SuiteReport> reports(jobs.size());
  if (threads <= 1) {
    for (std::size_t i = 0; i < jobs.size(); ++i) reports[i] = jobs[i].job();
  } else {
    std::size_t next = 0;
    while (next < jobs.size()) {
      std::size_t batch = std::min<std::size_t>(threads, jobs.size() - next);
      std::vector<std::future<SuiteReport>> futs;
      for (std::size_t i = 0; i < batch; ++i)
        futs.push_back(std::async(std::launch::async, jobs[next + i].job));
      for (std::size_t i = 0; i < batch; ++i) reports[next + i] = futs[i].get();
      next += batch;
    }
  }

  bool all = true;
  for (const auto& r : reports) all = all && r.all_pass();
  if (json) {
    std::cout << reports_json(reports) << "\n";
  } else {
    int passed = 0;
    for (const auto& r : reports) {
      std::cout << report_text(r) << "\n";
      if (r.all_pass()) ++passed;
    }
    std::cout << "verify: " << passed << "/" << reports.size() << " suites passed\n";
  }
  return all ? 0 : 1;
}

}  // namespace

int run(int argc, const char* const* argv) {
  CLI::App app{"jpcat: exact engine for partition and jellyfish-partition categories"};
  app.require_subcommand(1);
  app.footer(
      "exit codes:\n"
      "  0   success (verify: all checks passed)\n"
      "  1   a verify check failed\n"
      "  2   input could not be read or parsed\n"
      "  3   type or field mismatch\n"
      "  4   field characteristic too small for the operation\n"
      "  5   desk-scale cap exceeded (n <= 5, k+l <= 8; --unsafe-large overrides)\n"
      "  64  usage error\n"
      "\n"
      "morphism files: header lines 'field Q' or 'field F<p>', 'n <int>',\n"
      "'type <k> -> <l>', then '0-morphism' or lines '<coeff> * <diagram>' with\n"
      "diagrams P(k->l)[{1,2'},...] or JP(k->l; n=N)[...]J(#1,_,...). '-' reads\n"
      "a file argument from stdin.");

  const auto field_check =
      CLI::Validator([](std::string& s) -> std::string {
        if (s == "Q") return {};
        if (s.size() >= 2 && s[0] == 'F' &&
            std::all_of(s.begin() + 1, s.end(), [](char c) { return std::isdigit(c); }))
          return {};
        return "expected Q or F<p>";
      }, "FIELD");

  struct Common {
    int n = 0;
    std::string field;
    bool json = false;
    bool unsafe = false;
  };

  auto add_header_flags = [&](CLI::App* sub, Common& c) {
    sub->add_option("--n", c.n, "assert the categorical parameter of the input");
    sub->add_option("--field", c.field, "assert the field of the input (Q or F<p>)")
        ->check(field_check);
    sub->add_flag("--unsafe-large", c.unsafe, "lift the desk-scale caps");
  };

  int exit_code = 0;

  // compose / tensor
  Common c_compose, c_tensor;
  std::vector<std::string> compose_files, tensor_files;
  CLI::App* sub_compose =
      app.add_subcommand("compose", "compose two morphisms (second factor applies first)");
  sub_compose->add_option("files", compose_files, "TOP BOTTOM morphism files")
      ->expected(2);
  add_header_flags(sub_compose, c_compose);
  sub_compose->callback([&] {
    if (compose_files[0] == "-" && compose_files[1] == "-")
      throw CLI::ValidationError("compose", "only one input may come from stdin");
    JellyMorphism m2 = read_jelly(compose_files[0]);
    JellyMorphism m1 = read_jelly(compose_files[1]);
    assert_header(c_compose.n, c_compose.field, m2.n_param, m2.field);
    cap_morphism(m2, c_compose.unsafe);
    cap_morphism(m1, c_compose.unsafe);
    std::cout << print_jelly_morphism(compose_jelly(m2, m1));
  });

  CLI::App* sub_tensor =
      app.add_subcommand("tensor", "tensor two morphisms (first factor on the left)");
  sub_tensor->add_option("files", tensor_files, "LEFT RIGHT morphism files")->expected(2);
  add_header_flags(sub_tensor, c_tensor);
  sub_tensor->callback([&] {
    if (tensor_files[0] == "-" && tensor_files[1] == "-")
      throw CLI::ValidationError("tensor", "only one input may come from stdin");
    JellyMorphism m1 = read_jelly(tensor_files[0]);
    JellyMorphism m2 = read_jelly(tensor_files[1]);
    assert_header(c_tensor.n, c_tensor.field, m1.n_param, m1.field);
    cap_morphism(m1, c_tensor.unsafe);
    cap_morphism(m2, c_tensor.unsafe);
    cap_strands(m1.bottom + m2.bottom + m1.top + m2.top, c_tensor.unsafe);
    std::cout << print_jelly_morphism(tensor_jelly(m1, m2));
  });

  // reduce
  Common c_reduce;
  std::string reduce_file;
  CLI::App* sub_reduce = app.add_subcommand("reduce", "rewrite a morphism to normal form");
  sub_reduce->add_option("file", reduce_file, "morphism file")->required();
  add_header_flags(sub_reduce, c_reduce);
  sub_reduce->callback([&] {
    JellyMorphism m = read_jelly(reduce_file);
    assert_header(c_reduce.n, c_reduce.field, m.n_param, m.field);
    cap_morphism(m, c_reduce.unsafe);
    std::cout << print_jelly_morphism(reduce(m));
  });

  // psi
  Common c_psi;
  std::string psi_file;
  CLI::App* sub_psi =
      app.add_subcommand("psi", "matrix of a morphism on tensor powers (JSON)");
  sub_psi->add_option("file", psi_file, "morphism file")->required();
  add_header_flags(sub_psi, c_psi);
  sub_psi->callback([&] {
    JellyMorphism m = read_jelly(psi_file);
    assert_header(c_psi.n, c_psi.field, m.n_param, m.field);
    cap_morphism(m, c_psi.unsafe);
    std::cout << print_matrix_json(psi(m)) << "\n";
  });

  // xbasis
  Common c_xbasis;
  std::string xbasis_file;
  bool xbasis_inverse = false;
  CLI::App* sub_xbasis = app.add_subcommand(
      "xbasis", "convert a jellyfish-free morphism to x-basis coordinates");
  sub_xbasis->add_option("file", xbasis_file, "morphism file")->required();
  sub_xbasis->add_flag("--inverse", xbasis_inverse,
                       "treat the input coefficients as x-basis coordinates");
  add_header_flags(sub_xbasis, c_xbasis);
  sub_xbasis->callback([&] {
    Morphism m = read_pure(xbasis_file);
    assert_header(c_xbasis.n, c_xbasis.field, m.n_param, m.field);
    cap_n(m.n_param, c_xbasis.unsafe);
    cap_strands(m.bottom + m.top, c_xbasis.unsafe);
    if (xbasis_inverse) {
      std::cout << print_morphism(from_x_basis(m.bottom, m.top, m.field, m.n_param, m.terms));
    } else {
      std::cout << print_x_coordinates(m.bottom, m.top, m.field, m.n_param, to_x_basis(m));
    }
  });

  // orbits
  Common c_orbits;
  int orbits_k = 2;
  CLI::App* sub_orbits =
      app.add_subcommand("orbits", "orbit classes of the tuple basis of V^k");
  sub_orbits->add_option("--n", c_orbits.n, "categorical parameter")->required();
  sub_orbits->add_option("--k", orbits_k, "tensor power")->required();
  sub_orbits->add_flag("--json", c_orbits.json, "emit JSON");
  sub_orbits->add_flag("--unsafe-large", c_orbits.unsafe, "lift the desk-scale caps");
  sub_orbits->callback([&] {
    cap_n(c_orbits.n, c_orbits.unsafe);
    cap_strands(orbits_k, c_orbits.unsafe);
    std::cout << (c_orbits.json ? orbits_json(c_orbits.n, orbits_k)
                                : orbits_text(c_orbits.n, orbits_k));
    if (c_orbits.json) std::cout << "\n";
  });

  // dims
  Common c_dims;
  int dims_max = 4;
  CLI::App* sub_dims =
      app.add_subcommand("dims", "combinatorial tables and hom dimension grid");
  sub_dims->add_option("--n", c_dims.n, "categorical parameter")->required();
  sub_dims->add_option("--max", dims_max, "largest k+l in the grid");
  sub_dims->add_flag("--json", c_dims.json, "emit JSON");
  sub_dims->add_flag("--unsafe-large", c_dims.unsafe, "lift the desk-scale caps");
  sub_dims->callback([&] {
    cap_n(c_dims.n, c_dims.unsafe);
    cap_strands(dims_max, c_dims.unsafe);
    std::cout << (c_dims.json ? dims_json(c_dims.n, dims_max) : dims_text(c_dims.n, dims_max));
    if (c_dims.json) std::cout << "\n";
  });

  // bases
  Common c_bases;
  int bases_k = 2;
  CLI::App* sub_bases =
      app.add_subcommand("bases", "normal-form basis of Hom(k, 0)");
  sub_bases->add_option("--n", c_bases.n, "categorical parameter")->required();
  sub_bases->add_option("--k", bases_k, "number of bottom strands")->required();
  sub_bases->add_flag("--json", c_bases.json, "emit JSON");
  sub_bases->add_flag("--unsafe-large", c_bases.unsafe, "lift the desk-scale caps");
  sub_bases->callback([&] {
    cap_n(c_bases.n, c_bases.unsafe);
    cap_strands(bases_k, c_bases.unsafe);
    std::cout << (c_bases.json ? bases_json(c_bases.n, bases_k) : bases_text(c_bases.n, bases_k));
    if (c_bases.json) std::cout << "\n";
  });

  // verify
  Common c_verify;
  std::uint64_t verify_seed = kDefaultSeed;
  int verify_max = 3;
  int verify_threads = 1;
  std::vector<std::string> verify_suites;
  CLI::App* sub_verify = app.add_subcommand("verify", "run the verification suites");
  sub_verify->add_option("suites", verify_suites, "suites to run (default: all)")
      ->check(CLI::IsMember({"relations", "phi-kernel", "fullness", "faithfulness",
                             "golden", "associativity"}));
  sub_verify->add_option("--n", c_verify.n, "run only this categorical parameter");
  sub_verify->add_option("--field", c_verify.field,
                         "field for the relation suite (Q or F<p>)")
      ->check(field_check);
  sub_verify->add_option("--seed", verify_seed, "seed for randomized checks");
  sub_verify->add_option("--max", verify_max, "largest k+l in the suite grids");
  sub_verify->add_option("--threads", verify_threads, "run suites in parallel");
  sub_verify->add_flag("--json", c_verify.json, "emit JSON");
  sub_verify->add_flag("--unsafe-large", c_verify.unsafe, "lift the desk-scale caps");
  sub_verify->callback([&] {
    exit_code = run_verify(c_verify.n, c_verify.field, verify_seed, verify_max,
                           verify_threads, c_verify.json, c_verify.unsafe, verify_suites);
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 64;
  } catch (const parse_error& e) {
    std::cerr << "parse error";
    if (e.line > 0) std::cerr << " at line " << e.line << ", column " << e.col;
    std::cerr << ": " << e.what() << "\n";
    return 2;
  } catch (const type_mismatch_error& e) {
    std::cerr << "type mismatch: " << e.what() << "\n";
    return 3;
  } catch (const field_mismatch_error& e) {
    std::cerr << "field mismatch: " << e.what() << "\n";
    return 3;
  } catch (const characteristic_error& e) {
    std::cerr << "characteristic error: " << e.what() << "\n";
    return 4;
  } catch (const cap_exceeded_error& e) {
    std::cerr << "cap exceeded: " << e.what() << "\n";
    return 5;
  }
  return exit_code;
}

}  // namespace partcat
