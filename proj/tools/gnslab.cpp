// gnslab: exact censuses, invariants, and analytic constants for
// generalized numerical semigroups.
//
// Conventions: data on stdout, logs on stderr; exit 0 on success, 1 on
// invalid input or validation failure, 2 on a resource cap.  The count
// cache (--cache, overridden by $GNSLAB_CACHE) is a JSON-lines file,
// append-only, last write wins per key.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <gns/io.hpp>

namespace {

using namespace gns;

struct RunConfig {
  int dim = 2;
  long long g = -1;       // single-genus request
  long long g_max = -1;   // range request
  int threads = 1;
  int trunc = -1;         // r_prime truncation; -1 = per-dim default
  double tol = 1e-12;
  int k = 2;
  long long n = 0;
  std::string cache_path;
  std::string gaps_file;
  std::string format = "csv";
  std::string rule = "symmetric";
  bool allow_long = false;
  bool with_labeling = false;
};

// ---------------------------------------------------------------------------
// caps: conservative defaults so a stray invocation cannot run for hours;
// --allow-long defers to the (still finite) engine caps.

void require(bool ok, const std::string& message) {
  if (!ok) throw std::invalid_argument(message);
}

void cap(bool ok, const std::string& message) {
  if (!ok) throw resource_limit_error(message + " (raise with --allow-long)");
}

void check_dim(int d) {
  require(d >= 1, "--dim must be >= 1");
  if (d > 4) throw resource_limit_error("--dim is capped at 4");
}

long long tree_cap(int d, bool allow_long) {
  static constexpr long long kDefault[] = {0, 14, 12, 7, 5};
  static constexpr long long kLong[] = {0, 26, 16, 9, 6};
  return (allow_long ? kLong : kDefault)[d];
}

// ---------------------------------------------------------------------------
// cache plumbing

std::string effective_cache(const RunConfig& rc) {
  if (const char* env = std::getenv("GNSLAB_CACHE"); env && *env) return env;
  return rc.cache_path;
}

struct CacheSession {
  std::string path;
  CountTable table;  // preloaded cells
  CountTable fresh;  // computed this run, appended at the end

  explicit CacheSession(const std::string& p) : path(p) {
    if (!path.empty()) table = load_count_cache(path);
  }
  bool has_all(const std::vector<CountKey>& keys) const {
    for (const auto& k : keys)
      if (!table.contains(k)) return false;
    return true;
  }
  void add(const CountTable& computed) {
    for (const auto& [key, value] : computed.cells()) {
      if (!table.contains(key)) fresh.set(key, value);
      table.set(key, value);
    }
  }
  void flush() {
    if (!path.empty() && fresh.size() > 0) {
      append_count_cache(path, fresh);
      std::cerr << "cache: appended " << fresh.size() << " cell(s) to " << path << "\n";
    }
  }
};

// ---------------------------------------------------------------------------
// output helpers

// Census tables only materialize realized cells; an absent cell is a zero.
BigCount cell_or_zero(const CountTable& table, const CountKey& key) {
  const auto v = table.get(key);
  return v ? *v : BigCount(0);
}

void emit_rows_csv_or_json(const RunConfig& rc, const CountTable& table,
                           const std::vector<CountKey>& keys) {
  if (rc.format == "json") {
    for (const auto& k : keys)
      std::cout << count_cell_to_json(k, cell_or_zero(table, k)).dump() << "\n";
    return;
  }
  std::vector<std::pair<long long, BigCount>> rows;
  rows.reserve(keys.size());
  for (const auto& k : keys) rows.emplace_back(k.g, cell_or_zero(table, k));
  write_counts_csv(std::cout, rows);
}

void print_value(double v) { std::printf("%.15g\n", v); }

// ---------------------------------------------------------------------------
// count subcommands

int run_count_depth2(const RunConfig& rc) {
  check_dim(rc.dim);
  const long long hi = rc.g >= 0 ? rc.g : rc.g_max;
  const long long lo = rc.g >= 0 ? rc.g : 0;
  require(hi >= 0, "count depth2 needs --g or --g-max");
  if (!rc.allow_long) cap(hi <= 60, "depth2 is capped at g = 60 by default");

  CacheSession cache(effective_cache(rc));
  std::vector<CountKey> keys;
  for (long long g = lo; g <= hi; ++g) keys.push_back({"depth2", rc.dim, g, -1, ""});
  long long computed = 0;
  for (const auto& key : keys) {
    if (cache.table.contains(key)) continue;
    CountTable one;
    one.set(key, depth2_count(rc.dim, key.g, {rc.threads, false}));
    cache.add(one);
    ++computed;
  }
  std::cerr << "depth2: " << computed << " computed, " << (keys.size() - computed)
            << " from cache\n";
  emit_rows_csv_or_json(rc, cache.table, keys);
  cache.flush();
  return 0;
}

int run_count_tree_family(const RunConfig& rc, const std::string& stat) {
  check_dim(rc.dim);
  const long long hi = rc.g >= 0 ? rc.g : rc.g_max;
  require(hi >= 0, "count " + stat + " needs --g or --g-max");
  cap(hi <= tree_cap(rc.dim, rc.allow_long),
      "tree enumeration at dim " + std::to_string(rc.dim) + " is capped at g = " +
          std::to_string(tree_cap(rc.dim, rc.allow_long)));

  const std::string stat_key = stat == "tree" ? "total" : stat;
  CacheSession cache(effective_cache(rc));
  std::vector<CountKey> keys;
  const long long lo = rc.g >= 0 ? rc.g : 0;
  if (stat == "by-depth") {
    for (long long g = lo; g <= hi; ++g)
      for (long long q = 0; q <= g; ++q) keys.push_back({stat_key, rc.dim, g, q, ""});
  } else {
    for (long long g = lo; g <= hi; ++g) keys.push_back({stat_key, rc.dim, g, -1, ""});
  }

  if (!cache.has_all(keys)) {
    const int gm = static_cast<int>(hi);
    CountTable computed;
    if (stat == "by-depth")
      computed = count_by_depth(rc.dim, gm);
    else if (stat == "rectangular")
      computed = rectangular_counts(rc.dim, gm);
    else
      computed = tree_counts(rc.dim, gm);
    // unrealized (g, q) combinations are zero; make them explicit so the
    // cache satisfies completeness checks on reload
    for (long long g = 0; g <= hi; ++g) {
      const long long q_hi = stat == "by-depth" ? g : -1;
      for (long long q = stat == "by-depth" ? 0 : -1; q <= q_hi; ++q) {
        const CountKey key{stat_key, rc.dim, g, q, ""};
        if (!computed.contains(key)) computed.set(key, 0);
      }
    }
    cache.add(computed);
    std::cerr << stat << ": enumerated the census up to g = " << hi << "\n";
  } else {
    std::cerr << stat << ": served from cache\n";
  }

  if (stat == "by-depth") {
    if (rc.format == "json") {
      for (const auto& k : keys)
        std::cout << count_cell_to_json(k, cell_or_zero(cache.table, k)).dump() << "\n";
    } else {
      std::vector<std::tuple<long long, long long, BigCount>> rows;
      for (const auto& k : keys) rows.emplace_back(k.g, k.q, cell_or_zero(cache.table, k));
      write_depth_csv(std::cout, rows);
    }
  } else {
    emit_rows_csv_or_json(rc, cache.table, keys);
  }
  cache.flush();
  return 0;
}

int run_count_shape3(const RunConfig& rc) {
  const long long hi = rc.g >= 0 ? rc.g : rc.g_max;
  require(hi >= 0, "count shape3 needs --g or --g-max");
  require(rc.rule == "symmetric" || rc.rule == "closure",
          "--rule must be symmetric or closure");
  cap(hi <= (rc.allow_long ? 40 : 25), "shape3 is capped at g = 25 by default, 40 overall");

  // The symmetric-shave rule reproduces the circulated reference table for
  // the [2,1] column; the closure rule counts exactly the additively closed
  // gap sets (both rules agree on the [3] column).  Cells are cached under
  // rule-specific stat names so the two never collide.
  const bool closure = rc.rule == "closure";
  const std::string stat = closure ? "shape3-closure" : "shape3";
  CacheSession cache(effective_cache(rc));
  const long long lo = rc.g >= 0 ? rc.g : 0;
  std::vector<CountKey> k3, k21;
  for (long long g = lo; g <= hi; ++g) {
    k3.push_back({stat, 2, g, -1, "[3]"});
    k21.push_back({stat, 2, g, -1, "[2,1]"});
  }
  auto all = k3;
  all.insert(all.end(), k21.begin(), k21.end());
  if (!cache.has_all(all)) {
    CountTable t = shape3_counts(
        static_cast<int>(hi),
        closure ? Shape3Rule::closure : Shape3Rule::symmetric_shave, rc.threads);
    if (closure) {  // re-key under the rule-specific stat
      CountTable rekeyed;
      for (const auto& [key, value] : t.cells())
        rekeyed.set({stat, key.d, key.g, key.q, key.shape}, value);
      t = std::move(rekeyed);
    }
    cache.add(t);
    std::cerr << "shape3(" << rc.rule << "): computed up to g = " << hi << "\n";
  } else {
    std::cerr << "shape3(" << rc.rule << "): served from cache\n";
  }

  if (rc.format == "json") {
    for (size_t i = 0; i < k3.size(); ++i) {
      std::cout << count_cell_to_json(k3[i], *cache.table.get(k3[i])).dump() << "\n";
      std::cout << count_cell_to_json(k21[i], *cache.table.get(k21[i])).dump() << "\n";
    }
  } else {
    std::vector<std::tuple<long long, BigCount, BigCount>> rows;
    for (size_t i = 0; i < k3.size(); ++i)
      rows.emplace_back(k3[i].g, *cache.table.get(k3[i]), *cache.table.get(k21[i]));
    write_shape3_csv(std::cout, rows);
  }
  cache.flush();
  return 0;
}

// ---------------------------------------------------------------------------
// other subcommands

void check_partition_dim(int e) {
  require(e >= 0, "--dim must be >= 0");
  if (e > 4) throw resource_limit_error("--dim is capped at 4");
}

int run_partitions_count(const RunConfig& rc) {
  check_partition_dim(rc.dim);
  require(rc.n >= 0, "--n must be >= 0");
  if (rc.dim <= 2)
    cap(rc.n <= 1000000, "series evaluation is capped at n = 10^6");
  std::cout << count_partitions(rc.dim, static_cast<int>(rc.n)).str() << "\n";
  return 0;
}

int run_partitions_enumerate(const RunConfig& rc) {
  check_partition_dim(rc.dim);
  require(rc.n >= 0, "--n must be >= 0");
  // bound the stream length before producing it
  const BigCount total = count_partitions(rc.dim, static_cast<int>(rc.n));
  cap(rc.allow_long || total <= 1000000,
      "enumeration would emit " + total.str() + " partitions");
  enumerate_partitions(rc.dim, static_cast<int>(rc.n), [](const MultiPartition& p) {
    std::cout << partition_to_json(p).dump() << "\n";
    return true;
  });
  return 0;
}

Json violation_to_json(const GnsViolation& v) {
  Json j;
  j["kind"] = v.kind == GnsViolation::Kind::zero_gap ? "zero_gap" : "not_closed";
  j["gap"] = detail::point_to_json(v.gap);
  if (v.kind == GnsViolation::Kind::not_closed)
    j["summands"] = Json::array({detail::point_to_json(v.a), detail::point_to_json(v.b)});
  return j;
}

int run_analyze(const RunConfig& rc) {
  std::ifstream in(rc.gaps_file);
  require(static_cast<bool>(in), "cannot open gaps file: " + rc.gaps_file);
  const Gns s = gns_from_json(Json::parse(in));
  check_dim(s.dim());

  const GnsValidation v = validate_gns(s);
  if (!v.ok) {
    Json j;
    j["valid"] = false;
    j["violation"] = violation_to_json(*v.violation);
    std::cout << j.dump(2) << "\n";
    return 1;
  }

  const Multset m = multset(s);
  const int q = depth(s);
  Json j;
  j["valid"] = true;
  j["dim"] = s.dim();
  j["genus"] = s.genus();
  j["multset"] = multset_to_json(m);
  j["shape"] = partition_to_json(shape(m));
  j["depth"] = q;
  j["region_sizes"] = region_sizes(m, q + 1);
  Json frob = Json::array();
  if (s.genus() > 0)
    for (const Point& f : frobenius_allowable_gaps(s)) frob.push_back(detail::point_to_json(f));
  j["frobenius"] = std::move(frob);
  if (rc.with_labeling) j["labeling"] = labeling_to_json(labeling_from_gns(s));
  std::cout << j.dump(2) << "\n";
  return 0;
}

int run_constants(const RunConfig& rc, const std::string& which) {
  if (which == "rk") {
    require(rc.k >= 1, "--k must be >= 1");
    print_value(r_k(rc.k, rc.tol).value);
  } else if (which == "ck") {
    require(rc.k >= 1, "--k must be >= 1");
    print_value(c_k(rc.k, rc.tol).value);
  } else {  // rprime
    require(rc.dim >= 0, "--dim must be >= 0");
    if (rc.dim > 4) throw resource_limit_error("--dim is capped at 4");
    int trunc = rc.trunc >= 1 ? rc.trunc : (rc.dim <= 2 ? 60 : 12);
    if (rc.dim >= 3) {
      cap(rc.allow_long || trunc <= 14, "rprime enumeration is capped at --trunc 14 by default");
      std::cerr << "rprime dim " << rc.dim << ": enumeration-backed estimate, truncated at n = "
                << trunc << "; the exact constant is at least this value\n";
    }
    print_value(r_prime(rc.dim, trunc, rc.tol).value);
  }
  return 0;
}

int run_plotdata(const RunConfig& rc) {
  require(rc.g_max >= 2, "plotdata fig5 needs --g-max >= 2");
  CacheSession cache(effective_cache(rc));
  const long long compute_cap = rc.allow_long ? 120 : 60;
  long long computed = 0;
  for (long long g = 2; g <= rc.g_max; ++g) {
    const CountKey key{"depth2", 2, g, -1, ""};
    if (cache.table.contains(key)) continue;
    if (g > compute_cap) {
      cache.flush();  // keep whatever was computed before the gap
      std::cerr << "plotdata fig5: missing depth2 count for g=" << g
                << " and it exceeds the computation cap\n";
      return 1;
    }
    CountTable one;
    one.set(key, depth2_count(2, g, {rc.threads, false}));
    cache.add(one);
    ++computed;
  }
  std::cerr << "plotdata fig5: " << computed << " count(s) computed, "
            << (rc.g_max - 1 - computed) << " from cache\n";
  const auto rows = fig5_series(rc.g_max, cache.table);
  if (rc.format == "json") {
    for (const auto& r : rows) {
      Json j;
      j["g"] = r.g;
      j["inv_g"] = r.inv_g;
      j["scaled"] = r.scaled;
      std::cout << j.dump() << "\n";
    }
  } else {
    write_fig5_csv(std::cout, rows);
  }
  cache.flush();
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  RunConfig rc;
  std::function<int()> run;

  CLI::App app{"exact censuses and analytic constants for generalized numerical semigroups"};
  app.require_subcommand(1);

  // partitions ---------------------------------------------------------
  auto* partitions = app.add_subcommand("partitions", "multidimensional partition counts and streams");
  partitions->require_subcommand(1);
  auto* p_count = partitions->add_subcommand("count", "print p_e(n)");
  p_count->add_option("--dim", rc.dim, "partition dimension e")->required();
  p_count->add_option("--n", rc.n, "weight n")->required();
  p_count->callback([&] { run = [&] { return run_partitions_count(rc); }; });
  auto* p_enum = partitions->add_subcommand("enumerate", "stream partition JSON, one per line");
  p_enum->add_option("--dim", rc.dim, "partition dimension e")->required();
  p_enum->add_option("--n", rc.n, "weight n")->required();
  p_enum->add_flag("--allow-long", rc.allow_long, "lift the default stream-length cap");
  p_enum->callback([&] { run = [&] { return run_partitions_enumerate(rc); }; });

  // analyze ------------------------------------------------------------
  auto* analyze = app.add_subcommand("analyze", "invariants of one gap set (JSON report)");
  analyze->add_option("--gaps-file", rc.gaps_file, "gap-set JSON file")->required();
  analyze->add_flag("--labeling", rc.with_labeling, "include the partition labeling");
  analyze->callback([&] { run = [&] { return run_analyze(rc); }; });

  // count ---------------------------------------------------------------
  auto* count = app.add_subcommand("count", "exact censuses (tables)");
  count->require_subcommand(1);
  const auto add_count_common = [&](CLI::App* c, bool with_dim) {
    if (with_dim) c->add_option("--dim", rc.dim, "ambient dimension d");
    c->add_option("--g", rc.g, "single genus");
    c->add_option("--g-max", rc.g_max, "genus range 0..g-max");
    c->add_option("--threads", rc.threads, "worker count (output is identical for any value)")
        ->check(CLI::PositiveNumber);
    c->add_option("--cache", rc.cache_path, "JSON-lines count cache ($GNSLAB_CACHE overrides)");
    c->add_option("--format", rc.format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    c->add_flag("--allow-long", rc.allow_long, "lift the default genus caps");
  };
  auto* c_depth2 = count->add_subcommand("depth2", "monoids of depth exactly 2 (closed form)");
  add_count_common(c_depth2, true);
  c_depth2->callback([&] { run = [&] { return run_count_depth2(rc); }; });
  auto* c_tree = count->add_subcommand("tree", "full census by genus (tree enumeration)");
  add_count_common(c_tree, true);
  c_tree->callback([&] { run = [&] { return run_count_tree_family(rc, "tree"); }; });
  auto* c_bydepth = count->add_subcommand("by-depth", "census refined by depth");
  add_count_common(c_bydepth, true);
  c_bydepth->callback([&] { run = [&] { return run_count_tree_family(rc, "by-depth"); }; });
  auto* c_shape3 = count->add_subcommand("shape3", "pair counts for the two shapes of total 3");
  add_count_common(c_shape3, false);
  c_shape3->add_option("--rule", rc.rule,
                       "symmetric (reference-table variant, default) or closure (additively "
                       "closed census)")
      ->check(CLI::IsMember({"symmetric", "closure"}));
  c_shape3->callback([&] { run = [&] { return run_count_shape3(rc); }; });
  auto* c_rect = count->add_subcommand("rectangular", "census restricted to multsets of size d");
  add_count_common(c_rect, true);
  c_rect->callback([&] { run = [&] { return run_count_tree_family(rc, "rectangular"); }; });

  // constants ------------------------------------------------------------
  auto* constants = app.add_subcommand("constants", "analytic constants via bisection");
  constants->require_subcommand(1);
  auto* k_rk = constants->add_subcommand("rk", "root of x^k = (x+1)^(k-1)");
  k_rk->add_option("--k", rc.k, "index k")->required();
  k_rk->add_option("--tol", rc.tol, "bracket tolerance");
  k_rk->callback([&] { run = [&] { return run_constants(rc, "rk"); }; });
  auto* k_ck = constants->add_subcommand("ck", "largest root of F_k = 1");
  k_ck->add_option("--k", rc.k, "index k")->required();
  k_ck->add_option("--tol", rc.tol, "bracket tolerance");
  k_ck->callback([&] { run = [&] { return run_constants(rc, "ck"); }; });
  auto* k_rp = constants->add_subcommand("rprime", "root of the truncated partition series");
  k_rp->add_option("--dim", rc.dim, "partition dimension in the series")->required();
  k_rp->add_option("--trunc", rc.trunc, "series truncation N (default 60, or 12 when dim >= 3)");
  k_rp->add_option("--tol", rc.tol, "bracket tolerance");
  k_rp->add_flag("--allow-long", rc.allow_long, "lift the enumeration truncation cap");
  k_rp->callback([&] { run = [&] { return run_constants(rc, "rprime"); }; });

  // plotdata ---------------------------------------------------------------
  auto* plotdata = app.add_subcommand("plotdata", "CSV series for plots");
  plotdata->require_subcommand(1);
  auto* fig5 = plotdata->add_subcommand("fig5", "scaled two-region growth series");
  fig5->add_option("--g-max", rc.g_max, "largest genus (rows start at g = 2)")->required();
  fig5->add_option("--threads", rc.threads, "worker count")->check(CLI::PositiveNumber);
  fig5->add_option("--cache", rc.cache_path, "JSON-lines count cache ($GNSLAB_CACHE overrides)");
  fig5->add_option("--format", rc.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  fig5->add_flag("--allow-long", rc.allow_long, "lift the computation cap");
  fig5->callback([&] { run = [&] { return run_plotdata(rc); }; });

  try {
    app.parse(argc, argv);
    return run ? run() : 0;
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;  // help exits 0, every flag error exits 1
  } catch (const resource_limit_error& e) {
    std::cerr << "resource cap: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
