#include "genusforge/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "genusforge/abelian.hpp"
#include "genusforge/errors.hpp"

namespace genusforge {

CurveCertificate construct_certificate(std::uint64_t q, std::int64_t g, const std::string& family,
                                       const VerifyOptions& opt) {
  if (family == "abelian") return construct_abelian(q, g);
  if (family == "toric") return construct_toric(q, g);
  if (family == "tame") return construct_tame(q, g);
  if (family != "auto") throw InvalidArgument("unknown family '" + family + "'");
  std::optional<CurveCertificate> best;
  std::int64_t best_n1 = -1;
  std::string reasons;
  VerifyOptions one = opt;
  one.depth = 1;
  auto consider = [&](auto&& build, const char* name) {
    try {
      CurveCertificate c = build();
      const auto rep = verify_certificate(c, one);
      const std::int64_t n1 = rep.n1().value_or(-1);
      if (rep.all_ok() && n1 > best_n1) {
        best = std::move(c);
        best_n1 = n1;
      }
    } catch (const Error& e) {
      reasons += std::string(" ") + name + ": " + e.what() + ";";
    }
  };
  consider([&] { return construct_abelian(q, g); }, "abelian");
  consider([&] { return construct_toric(q, g); }, "toric");
  if (!best) throw InfeasibleGenus("no family produced a verified certificate:" + reasons);
  return *best;
}

namespace {

TableCandidate run_candidate(const std::string& name, const std::function<CurveCertificate()>& build,
                             const VerifyOptions& opt) {
  TableCandidate c;
  c.family = name;
  try {
    const CurveCertificate cert = build();
    c.family = family_name(cert.family);
    c.points_lb = cert.claimed_point_lower_bound;
    const auto rep = verify_certificate(cert, opt);
    if (!rep.all_ok()) {
      c.error = rep.failures.front();
      return c;
    }
    if (rep.enumerable) c.n1_verified = rep.n1();
  } catch (const Error& e) {
    c.error = e.what();
  }
  return c;
}

int family_rank(const std::string& f) {
  static const std::vector<std::string> order{"abelian", "hyperelliptic", "toric", "tame", "tame-record"};
  return static_cast<int>(std::find(order.begin(), order.end(), f) - order.begin());
}

std::string ratio(double num, double den) {
  if (!(den > 0) || !std::isfinite(den)) return "";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", num / den);
  return buf;
}

}  // namespace

std::vector<TableRow> lower_bound_table(std::uint64_t q, std::int64_t g_lo, std::int64_t g_hi,
                                        const std::vector<std::string>& families, const VerifyOptions& opt) {
  if (g_lo < 0 || g_hi < g_lo) throw InvalidArgument("bad genus range");
  std::set<std::string> want;
  for (const auto& f : families) {
    if (f == "all") {
      want.insert({"abelian", "toric", "tame", "tame-records"});
    } else if (f == "abelian" || f == "toric" || f == "tame" || f == "tame-records") {
      want.insert(f);
    } else {
      throw InvalidArgument("unknown family '" + f + "'");
    }
  }
  if (want.empty()) throw InvalidArgument("no families requested");
  std::map<std::int64_t, RecordGenus> records;
  if (want.count("tame-records")) {
    for (int e = 4;; ++e) {
      const RecordGenus r = record_genera(q, e);
      if (r.g > g_hi) break;
      if (r.g >= g_lo) records[r.g] = r;
    }
  }
  VerifyOptions one = opt;
  one.depth = 1;
  std::vector<TableRow> rows;
  for (std::int64_t g = g_lo; g <= g_hi; ++g) {
    TableRow row;
    row.g = g;
    if (want.count("abelian")) row.candidates.push_back(run_candidate("abelian", [&] { return construct_abelian(q, g); }, one));
    if (want.count("toric")) row.candidates.push_back(run_candidate("toric", [&] { return construct_toric(q, g); }, one));
    if (want.count("tame")) row.candidates.push_back(run_candidate("tame", [&] { return construct_tame(q, g); }, one));
    if (auto it = records.find(g); it != records.end()) {
      TableCandidate c;
      c.family = "tame-record";
      c.points_lb = it->second.points_lb;
      row.candidates.push_back(c);
    }
    const TableCandidate* best = nullptr;
    for (const auto& c : row.candidates) {
      if (!c.error.empty()) continue;
      if (!best || c.score() > best->score() ||
          (c.score() == best->score() && family_rank(c.family) < family_rank(best->family))) {
        best = &c;
      }
    }
    if (best) {
      row.family = best->family;
      row.points_lb = best->points_lb;
      row.n1_verified = best->n1_verified;
    } else {
      row.family = "none";
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string table_csv(const std::vector<TableRow>& rows) {
  std::ostringstream os;
  os << "g,family,points_lb,N1_verified,ratio_g_over_logg,ratio_g_cuberoot\n";
  for (const auto& r : rows) {
    const double g = static_cast<double>(r.g);
    const double lb = static_cast<double>(r.points_lb);
    os << r.g << ',' << r.family << ',' << r.points_lb << ',';
    if (r.n1_verified) os << *r.n1_verified;
    os << ',' << (r.g > 1 ? ratio(lb, g / std::log(g)) : "") << ',' << (r.g > 0 ? ratio(lb, std::cbrt(g)) : "")
       << '\n';
  }
  return os.str();
}

}  // namespace genusforge
