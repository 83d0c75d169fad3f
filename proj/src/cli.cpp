#include "genusforge/cli.hpp"

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "genusforge/abelian.hpp"
#include "genusforge/errors.hpp"
#include "genusforge/pipeline.hpp"
#include "genusforge/primes.hpp"

namespace genusforge {

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidArgument("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_output(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw InvalidArgument("cannot write " + path);
  f << text;
}

void require_prime_power(std::uint64_t q) {
  if (q < 2 || prime_power(q).first == 0) throw InvalidArgument("--q must be a prime power >= 2");
}

std::string utc_now() {
  const auto t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
  return buf;
}

std::vector<LatticePoint> read_points(const std::string& path) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(read_file(path));
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("polygon input is not JSON: ") + e.what());
  }
  if (j.is_object() && j.contains("vertices")) j = j.at("vertices");
  std::vector<LatticePoint> pts;
  try {
    for (const auto& p : j) pts.push_back({p.at(0).get<std::int64_t>(), p.at(1).get<std::int64_t>()});
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("polygon input must be [[i, j], ...]: ") + e.what());
  }
  if (pts.empty()) throw FormatError("polygon input has no points");
  return pts;
}

nlohmann::json vertex_json(const LatticePolygon& p) {
  nlohmann::json v = nlohmann::json::array();
  for (const auto& x : p.vertices()) v.push_back({x.i, x.j});
  return v;
}

ASTower bench_tower(std::uint64_t q) {
  auto [p, k] = prime_power(q);
  ASTower t;
  t.p = static_cast<Residue>(p);
  t.base_q = q;
  t.construction_q = p;
  if (p == 2) {
    t.i_seq = {3};
  } else {
    t.i_seq = {1};
    t.j_seq = {1};
  }
  return t;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"genusforge: curves over finite fields with many rational points"};
  app.require_subcommand(1);

  unsigned threads = 1;
  std::uint64_t naive_budget = 0, fast_budget = 0;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--threads", threads, "worker threads for counting")->check(CLI::Range(1u, 1024u));
    sub->add_option("--naive-budget", naive_budget, "naive enumeration budget");
    sub->add_option("--fast-budget", fast_budget, "fast counter budget in x-values");
  };

  std::uint64_t q = 0;
  std::int64_t genus = -1;
  std::string family = "auto", output;
  bool timestamp = false;
  auto* construct = app.add_subcommand("construct", "build a certificate");
  construct->add_option("--q", q, "field size")->required();
  construct->add_option("--genus", genus, "target genus")->required();
  construct->add_option("--family", family, "abelian|toric|tame|auto")
      ->check(CLI::IsMember({"abelian", "toric", "tame", "auto"}));
  construct->add_option("--output,-o", output, "certificate file (default stdout)");
  construct->add_flag("--timestamp", timestamp, "record the creation time under meta");
  add_common(construct);

  std::string cert_path;
  int depth = 1;
  auto* verify = app.add_subcommand("verify", "re-validate a certificate and append the report");
  verify->add_option("certificate", cert_path, "certificate JSON")->required();
  verify->add_option("--depth", depth, "count over F_{q^m} for m <= depth")->check(CLI::NonNegativeNumber);
  verify->add_option("--output,-o", output, "where to write the updated certificate (default: in place)");
  add_common(verify);

  std::int64_t g_from = 0, g_to = 0;
  std::string families = "all";
  auto* table = app.add_subcommand("table", "CSV of certified lower bounds");
  table->add_option("--q", q, "field size")->required();
  table->add_option("--from", g_from, "first genus")->required();
  table->add_option("--to", g_to, "last genus")->required();
  table->add_option("--families", families, "comma list of abelian,toric,tame,tame-records,all");
  table->add_option("--output,-o", output, "CSV file (default stdout)");
  add_common(table);

  std::string op, input;
  auto* polygon = app.add_subcommand("polygon", "lattice polygon utilities");
  polygon->add_option("--op", op, "hull|pick|arnold")->required()->check(CLI::IsMember({"hull", "pick", "arnold"}));
  polygon->add_option("--input", input, "JSON array of [i, j] points")->required();

  int m = 1;
  auto* bench = app.add_subcommand("bench", "time the fast abelian counter");
  bench->add_option("--q", q, "field size")->required();
  bench->add_option("--m", m, "extension degree")->required()->check(CLI::PositiveNumber);
  add_common(bench);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return kExitOk;
    }
    err << "error: UsageError: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    Budget budget = budget_from_env();
    if (naive_budget) budget.naive = naive_budget;
    if (fast_budget) budget.fast = fast_budget;
    VerifyOptions vopt{depth, threads, budget};

    if (*construct) {
      require_prime_power(q);
      CurveCertificate cert = construct_certificate(q, genus, family, vopt);
      if (timestamp) cert.timestamp = utc_now();
      write_output(output, serialize(cert), out);
      return kExitOk;
    }
    if (*verify) {
      CurveCertificate cert = parse_certificate(read_file(cert_path));
      const VerificationReport rep = verify_certificate(cert, vopt);
      cert.verification = rep.to_json();
      write_output(output.empty() ? cert_path : output, serialize(cert), out);
      for (const auto& f : rep.failures) err << "check failed: " << f << "\n";
      out << (rep.all_ok() ? "verified" : "FAILED") << ": " << family_name(cert.family) << " q=" << cert.q
          << " g=" << cert.claimed_genus << " points_lb=" << cert.claimed_point_lower_bound << "\n";
      return rep.all_ok() ? kExitOk : kExitVerifyFailed;
    }
    if (*table) {
      require_prime_power(q);
      std::vector<std::string> fams;
      std::stringstream ss(families);
      for (std::string f; std::getline(ss, f, ',');) {
        if (!f.empty()) fams.push_back(f);
      }
      write_output(output, table_csv(lower_bound_table(q, g_from, g_to, fams, vopt)), out);
      return kExitOk;
    }
    if (*polygon) {
      const auto pts = read_points(input);
      const LatticePolygon hull = convex_hull(pts);
      nlohmann::json j;
      j["vertices"] = vertex_json(hull);
      if (op == "pick") {
        const PickData pd = pick_data(hull);
        j["interior"] = pd.interior;
        j["boundary"] = pd.boundary;
        j["twice_area"] = pd.twice_area;
      } else if (op == "arnold") {
        j["v"] = hull.size();
        j["twice_area"] = twice_area(hull);
        j["holds"] = arnold_check(hull);
      } else if (!hull.is_polygon()) {
        throw DegeneratePolygon("input points are collinear");
      }
      out << j.dump() << "\n";
      return kExitOk;
    }
    if (*bench) {
      require_prime_power(q);
      const ASTower t = bench_tower(q);
      const auto start = std::chrono::steady_clock::now();
      const std::int64_t N = count_points_abelian(t, m, {threads, budget.fast});
      const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      char rate[32];
      std::snprintf(rate, sizeof rate, "%.6g", secs);
      out << nlohmann::json{{"q", q}, {"m", m}, {"threads", threads}, {"N", N}, {"seconds", rate}}.dump() << "\n";
      return kExitOk;
    }
  } catch (const InfeasibleGenus& e) {
    err << "error: " << e.id() << ": " << e.what() << "\n";
    return kExitInfeasible;
  } catch (const BudgetExceeded& e) {
    err << "error: " << e.id() << ": " << e.what() << "\n";
    return kExitVerifyFailed;
  } catch (const InconsistentCounts& e) {
    err << "error: " << e.id() << ": " << e.what() << "\n";
    return kExitVerifyFailed;
  } catch (const Error& e) {
    err << "error: " << e.id() << ": " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace genusforge
