#ifndef UBP_CLI_COMMANDS_HPP_
#define UBP_CLI_COMMANDS_HPP_

#include <functional>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <string>
#include <thread>
#include <vector>

#include "json.hpp"

#include "../diagrams.hpp"
#include "../order.hpp"
#include "../partitions.hpp"
#include "../repdims.hpp"
#include "../submonoids.hpp"
#include "cache.hpp"

namespace ubp::cli {

  enum exit_code : int { success = 0, verification_failed = 1, usage_error = 2 };

  inline unsigned default_threads() {
    return std::max(1u, std::thread::hardware_concurrency());
  }

  struct Context {
    std::ostream* out;
    std::ostream* err;
    unsigned      threads = 1;
    Cache         cache   = Cache::from_environment();
  };

  namespace detail {

    inline IntegerPartition partition_of(int k, std::string const& text, char const* what) {
      auto p = IntegerPartition::parse(text);
      if (p.size() != k) {
        throw Error(error_kind::size_mismatch, std::string(what) + " \"" + text
                                                   + "\" is not a partition of "
                                                   + std::to_string(k));
      }
      return p;
    }

    inline void require_format(std::string const& format, std::set<std::string> const& allowed) {
      if (allowed.count(format) == 0) {
        throw Error(error_kind::invalid_argument, "unknown format \"" + format + "\"");
      }
    }

    inline PartitionPoset poset_from_json(nlohmann::json const& j) {
      PartitionPoset poset;
      poset.k = j.at("k").get<int>();
      std::map<std::string, std::size_t> index;
      for (auto const& node : j.at("nodes")) {
        index.emplace(node.get<std::string>(), poset.nodes.size());
        poset.nodes.push_back(IntegerPartition::parse(node.get<std::string>()));
      }
      for (auto const& e : j.at("edges")) {
        poset.edges.emplace_back(index.at(e.at(0).get<std::string>()),
                                 index.at(e.at(1).get<std::string>()));
      }
      return poset;
    }

    inline std::vector<Submonoid> lattice_from_json(nlohmann::json const& j) {
      int const              k = j.at("k").get<int>();
      std::vector<Submonoid> lattice;
      for (auto const& entry : j.at("submonoids")) {
        std::vector<IntegerPartition> ideal;
        for (auto const& mu : entry.at("downset")) {
          ideal.push_back(IntegerPartition::parse(mu.get<std::string>()));
        }
        lattice.push_back(Submonoid::from_downset(k, ideal));
      }
      return lattice;
    }

  }  // namespace detail

  ////////////////////////////////////////////////////////////////////////
  // Cached computations
  ////////////////////////////////////////////////////////////////////////

  inline PartitionPoset cached_hasse(Context const& ctx, int k) {
    auto const payload = ctx.cache.get_or_compute(
        "hasse", k, [&] { return to_json(hasse(k, ctx.threads)).dump(); });
    return detail::poset_from_json(nlohmann::json::parse(payload));
  }

  inline std::vector<Submonoid> cached_lattice(Context const& ctx, int k, std::size_t bound) {
    auto const payload = ctx.cache.get_or_compute(
        "submonoid-lattice", k, [&] { return to_json(all_submonoids(k, bound), k).dump(); });
    auto lattice = detail::lattice_from_json(nlohmann::json::parse(payload));
    if (lattice.size() > bound) {
      throw Error(error_kind::bound_exceeded,
                  std::to_string(lattice.size()) + " submonoids exceed the listing bound "
                      + std::to_string(bound));
    }
    return lattice;
  }

  inline BigInt cached_count(Context const& ctx, int k, bool progress) {
    auto const payload = ctx.cache.get_or_compute("counts", k, [&] {
      std::function<void(std::string const&)> report;
      if (progress) {
        report = [&ctx](std::string const& line) { *ctx.err << line << '\n'; };
      }
      return count_submonoids(k, ctx.threads, report).str();
    });
    return BigInt(payload);
  }

  ////////////////////////////////////////////////////////////////////////
  // enumerate
  ////////////////////////////////////////////////////////////////////////

  constexpr int enumeration_bound = 7;

  struct EnumerateOptions {
    int                        k = 0;
    std::optional<std::string> type;
    bool                       count_only = false;
    bool                       force      = false;
  };

  inline int cmd_enumerate(Context& ctx, EnumerateOptions const& o) {
    if (o.k < 0) {
      throw Error(error_kind::invalid_argument, "k must be nonnegative");
    }
    std::optional<IntegerPartition> filter;
    if (o.type) {
      filter = detail::partition_of(o.k, *o.type, "type");
    }
    if (o.count_only) {
      if (o.k <= enumeration_bound || o.force) {
        *ctx.out << count_U(o.k, filter) << '\n';
      } else {
        BigInt n = 0;
        for (auto const& mu : filter ? std::vector<IntegerPartition>{*filter} : partitions_of(o.k)) {
          n += j_class_size(o.k, mu);
        }
        *ctx.out << n << '\n';
      }
      return success;
    }
    if (o.k > enumeration_bound && !o.force) {
      throw Error(error_kind::bound_exceeded,
                  "full enumeration above k = " + std::to_string(enumeration_bound)
                      + " needs --force (or use --count-only)");
    }
    for (auto const& mu : filter ? std::vector<IntegerPartition>{*filter} : partitions_of(o.k)) {
      for (auto const& x : enumerate_U(o.k, mu)) {
        *ctx.out << to_json(x).dump() << '\n';
      }
    }
    return success;
  }

  ////////////////////////////////////////////////////////////////////////
  // multiply
  ////////////////////////////////////////////////////////////////////////

  struct MultiplyOptions {
    std::optional<int> k;
    std::string        lhs;
    std::string        rhs;
  };

  inline int cmd_multiply(Context& ctx, MultiplyOptions const& o) {
    auto const x = element_from_json(o.lhs);
    auto const y = element_from_json(o.rhs);
    if (x.degree() != y.degree() || (o.k && *o.k != x.degree())) {
      throw Error(error_kind::size_mismatch, "operands have degrees " + std::to_string(x.degree())
                                                 + " and " + std::to_string(y.degree())
                                                 + (o.k ? ", expected " + std::to_string(*o.k) : ""));
    }
    *ctx.out << to_json(multiply(x, y)).dump() << '\n';
    return success;
  }

  ////////////////////////////////////////////////////////////////////////
  // poset and interval
  ////////////////////////////////////////////////////////////////////////

  struct PosetOptions {
    int         k      = 2;
    std::string format = "json";
  };

  inline void write_poset(Context& ctx, PartitionPoset const& poset, std::string const& format,
                          std::string const& name = "") {
    if (format == "dot") {
      *ctx.out << to_dot(poset, name);
    } else {
      *ctx.out << to_json(poset).dump() << '\n';
    }
  }

  inline int cmd_poset(Context& ctx, PosetOptions const& o) {
    detail::require_format(o.format, {"json", "dot"});
    if (o.k < 2) {
      throw Error(error_kind::invalid_argument, "poset needs k >= 2");
    }
    write_poset(ctx, cached_hasse(ctx, o.k), o.format);
    return success;
  }

  struct IntervalOptions {
    int         k = 0;
    std::string bottom;
    std::string top;
    std::string format = "json";
  };

  inline int cmd_interval(Context& ctx, IntervalOptions const& o) {
    detail::require_format(o.format, {"json", "dot"});
    auto const bottom = detail::partition_of(o.k, o.bottom, "bottom");
    auto const top    = detail::partition_of(o.k, o.top, "top");
    write_poset(ctx, interval(bottom, top), o.format,
                "[" + bottom.to_string() + "; " + top.to_string() + "]");
    return success;
  }

  ////////////////////////////////////////////////////////////////////////
  // submonoids
  ////////////////////////////////////////////////////////////////////////

  struct SubmonoidOptions {
    int         k        = 1;
    bool        list     = false;
    std::string format   = "json";
    bool        progress = false;
    std::size_t bound    = default_submonoid_listing_bound;
  };

  inline int cmd_submonoids(Context& ctx, SubmonoidOptions const& o) {
    detail::require_format(o.format, {"json", "dot"});
    if (o.k < 1) {
      throw Error(error_kind::invalid_argument, "submonoids needs k >= 1");
    }
    if (!o.list) {
      *ctx.out << cached_count(ctx, o.k, o.progress) << '\n';
      return success;
    }
    auto const lattice = cached_lattice(ctx, o.k, o.bound);
    if (o.format == "dot") {
      *ctx.out << to_dot(lattice, o.k);
    } else {
      *ctx.out << to_json(lattice, o.k).dump() << '\n';
    }
    return success;
  }

  ////////////////////////////////////////////////////////////////////////
  // verify
  ////////////////////////////////////////////////////////////////////////

  namespace detail {

    constexpr std::size_t max_counterexamples = 20;

    class Check {
     public:
      explicit Check(std::string name) : _name(std::move(name)) {}

      void expect(bool ok, std::string const& what) {
        ++_cases;
        if (!ok) {
          ++_failures;
          if (_examples.size() < max_counterexamples) {
            _examples.push_back(what);
          }
        }
      }

      bool passed() const noexcept {
        return _failures == 0;
      }

      nlohmann::ordered_json report() const {
        return {{"name", _name},
                {"passed", passed()},
                {"cases", _cases},
                {"failures", _failures},
                {"counterexamples", _examples}};
      }

     private:
      std::string              _name;
      std::size_t              _cases    = 0;
      std::size_t              _failures = 0;
      std::vector<std::string> _examples;
    };

    inline std::string pair_text(IntegerPartition const& mu, IntegerPartition const& lambda) {
      return mu.to_string() + " | " + lambda.to_string();
    }

    inline std::vector<Check> order_suite(int k) {
      auto const nodes = poset_nodes(k);
      auto const all   = partitions_of(k);

      Check oracle("oracle-equivalence");
      for (auto const& lambda : all) {
        std::set<IntegerPartition> reached;
        for (auto const& p : join_closure(lambda)) {
          reached.insert(type_of(p));
        }
        for (auto const& mu : all) {
          oracle.expect(preceq(mu, lambda) == (reached.count(mu) == 1), pair_text(mu, lambda));
        }
      }

      Check axioms("partial-order");
      auto const rel = relation_matrix(nodes);
      for (std::size_t i = 0; i < nodes.size(); ++i) {
        axioms.expect(rel[i][i] != 0, "not reflexive at " + nodes[i].to_string());
        for (std::size_t j = 0; j < nodes.size(); ++j) {
          axioms.expect(i == j || !(rel[i][j] && rel[j][i]), pair_text(nodes[i], nodes[j]));
          for (std::size_t m = 0; m < nodes.size(); ++m) {
            if (rel[i][j] && rel[j][m] && !rel[i][m]) {
              axioms.expect(false, "not transitive at " + nodes[i].to_string() + " | "
                                       + nodes[j].to_string() + " | " + nodes[m].to_string());
            }
          }
        }
      }

      Check witness("witness-soundness");
      for (auto const& mu : nodes) {
        for (auto const& lambda : nodes) {
          if (!preceq(mu, lambda)) {
            continue;
          }
          auto const   list = join_witness(mu, lambda);
          SetPartition j    = list.front();
          bool         ok   = true;
          for (auto const& p : list) {
            ok = ok && type_of(p) == lambda;
            j  = join(j, p);
          }
          witness.expect(ok && type_of(j) == mu, pair_text(mu, lambda));
        }
      }
      return {oracle, axioms, witness};
    }

    inline std::vector<Check> covers_suite(int k) {
      auto const nodes     = poset_nodes(k);
      auto const reduction = transitive_reduction(relation_matrix(nodes));
      auto const h         = hasse(k);
      std::set<std::pair<std::size_t, std::size_t>> expected(reduction.begin(), reduction.end());
      std::set<std::pair<std::size_t, std::size_t>> got(h.edges.begin(), h.edges.end());

      Check covers("covers-equal-reduction");
      for (auto const& [lo, hi] : expected) {
        covers.expect(got.count({lo, hi}) == 1,
                      "missing " + nodes[lo].to_string() + " -> " + nodes[hi].to_string());
      }
      for (auto const& [lo, hi] : got) {
        covers.expect(expected.count({lo, hi}) == 1,
                      "extra " + nodes[lo].to_string() + " -> " + nodes[hi].to_string());
      }

      Check minimum("unique-minimum");
      for (auto const& nu : nodes) {
        minimum.expect(preceq(nodes.front(), nu), nu.to_string());
      }
      return {covers, minimum};
    }

    inline std::vector<Check> sumsquares_suite(int k) {
      Check  rows("sum-of-squares");
      BigInt total = 0;
      BigInt lhs   = 0;
      for (auto const& row : dimension_report(k)) {
        rows.expect(row.equal, row.mu.to_string() + ": " + row.lhs.str() + " != " + row.rhs.str());
        total += row.rhs;
        lhs += row.lhs;
      }
      Check sum("total");
      sum.expect(total == lhs, total.str() + " != " + lhs.str());
      if (k <= enumeration_bound) {
        sum.expect(total == count_U(k), total.str() + " != |U_k| by enumeration");
      }
      return {rows, sum};
    }

    inline std::vector<Check> closure_suite(int k, unsigned threads) {
      auto const lattice = all_submonoids(k);

      Check lattice_closed("lattice-closure");
      for (auto const& s : lattice) {
        lattice_closed.expect(verify_closure(s), s.label());
      }

      Check bijection("downset-bijection");
      auto const                              nodes = poset_nodes(k);
      std::set<std::vector<IntegerPartition>> downsets;
      for (auto const& s : lattice) {
        downsets.insert(s.downset());
      }
      for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << nodes.size()); ++mask) {
        std::vector<IntegerPartition> classes;
        std::string                   text;
        for (std::size_t i = 0; i < nodes.size(); ++i) {
          if (mask >> i & 1) {
            classes.push_back(nodes[i]);
            text += (text.empty() ? "" : " ") + nodes[i].label();
          }
        }
        bijection.expect(verify_closure(k, classes) == (downsets.count(classes) == 1),
                         "{" + text + "}");
      }

      Check unions("union-closure");
      for (auto const& a : lattice) {
        for (auto const& b : lattice) {
          unions.expect(verify_closure(submonoid_union(a, b)), a.label() + " + " + b.label());
        }
      }

      Check count("count");
      count.expect(count_submonoids(k, threads) == lattice.size(),
                   "count differs from the listing size " + std::to_string(lattice.size()));
      return {lattice_closed, bijection, unions, count};
    }

    struct Suite {
      std::string                                    name;
      int                                            min_k;
      int                                            max_k;
      std::function<std::vector<Check>(int, unsigned)> run;
    };

    inline std::vector<Suite> const& suites() {
      static std::vector<Suite> const all{
          {"order", 2, default_oracle_bound, [](int k, unsigned) { return order_suite(k); }},
          {"covers", 2, 20, [](int k, unsigned) { return covers_suite(k); }},
          {"sumsquares", 0, 40, [](int k, unsigned) { return sumsquares_suite(k); }},
          {"closure", 1, default_verification_bound,
           [](int k, unsigned threads) { return closure_suite(k, threads); }}};
      return all;
    }

  }  // namespace detail

  struct VerifyOptions {
    int         k     = 2;
    std::string suite = "all";
  };

  inline int cmd_verify(Context& ctx, VerifyOptions const& o) {
    std::vector<detail::Suite> selected;
    for (auto const& s : detail::suites()) {
      if (o.suite == "all" || o.suite == s.name) {
        selected.push_back(s);
      }
    }
    if (selected.empty()) {
      throw Error(error_kind::invalid_argument, "unknown suite \"" + o.suite + "\"");
    }
    nlohmann::ordered_json report;
    report["k"]     = o.k;
    report["suite"] = o.suite;
    bool passed     = true;
    auto results    = nlohmann::ordered_json::array();
    for (auto const& s : selected) {
      nlohmann::ordered_json entry;
      entry["name"] = s.name;
      if (o.k < s.min_k || o.k > s.max_k) {
        std::string const reason = "k must lie in [" + std::to_string(s.min_k) + ", "
                                   + std::to_string(s.max_k) + "]";
        if (o.suite != "all") {
          throw Error(error_kind::bound_exceeded, "suite " + s.name + ": " + reason);
        }
        entry["skipped"] = reason;
        results.push_back(std::move(entry));
        continue;
      }
      auto checks     = nlohmann::ordered_json::array();
      bool suite_pass = true;
      for (auto const& c : s.run(o.k, ctx.threads)) {
        suite_pass = suite_pass && c.passed();
        checks.push_back(c.report());
      }
      entry["passed"] = suite_pass;
      entry["checks"] = std::move(checks);
      passed          = passed && suite_pass;
      results.push_back(std::move(entry));
    }
    report["passed"] = passed;
    report["suites"] = std::move(results);
    *ctx.out << report.dump(2) << '\n';
    return passed ? success : verification_failed;
  }

  ////////////////////////////////////////////////////////////////////////
  // repdims
  ////////////////////////////////////////////////////////////////////////

  struct RepdimsOptions {
    int         k      = 0;
    std::string format = "json";
  };

  inline int cmd_repdims(Context& ctx, RepdimsOptions const& o) {
    detail::require_format(o.format, {"json", "csv"});
    if (o.k < 0) {
      throw Error(error_kind::invalid_argument, "k must be nonnegative");
    }
    auto const rows = dimension_report(o.k);
    if (o.format == "csv") {
      *ctx.out << to_csv(rows);
    } else {
      *ctx.out << to_json(rows, o.k).dump() << '\n';
    }
    bool const ok = std::all_of(rows.begin(), rows.end(), [](auto const& r) { return r.equal; });
    return ok ? success : verification_failed;
  }

}  // namespace ubp::cli

#endif  // UBP_CLI_COMMANDS_HPP_
