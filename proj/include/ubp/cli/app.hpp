#ifndef UBP_CLI_APP_HPP_
#define UBP_CLI_APP_HPP_

#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "commands.hpp"

namespace ubp::cli {

  // Parses the arguments (without the program name) and runs the selected
  // subcommand. Returns the process exit code.
  inline int run(std::vector<std::string> const& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Uniform block permutations: enumeration, the partition order, submonoids"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string("ubp ") + code_version);

    unsigned    threads  = default_threads();
    std::string out_path;
    bool        no_cache = false;
    auto common = [&](CLI::App* sub) {
      sub->add_option("--threads", threads, "Worker threads (output does not depend on it)")
          ->check(CLI::PositiveNumber);
      sub->add_option("--out", out_path, "Write the result to this file instead of stdout");
      sub->add_flag("--no-cache", no_cache, "Neither read nor write the result cache");
    };

    EnumerateOptions enumerate_opts;
    auto*            enumerate = app.add_subcommand("enumerate", "List or count elements of U_k");
    enumerate->add_option("--k", enumerate_opts.k, "Degree")->required();
    enumerate->add_option("--type", enumerate_opts.type, "Only the J-class of this type, e.g. 2,1,1");
    enumerate->add_flag("--count-only", enumerate_opts.count_only, "Print the number of elements");
    enumerate->add_flag("--force", enumerate_opts.force, "Allow full enumeration above k = 7");
    common(enumerate);

    MultiplyOptions multiply_opts;
    auto*           mult = app.add_subcommand("multiply", "Multiply two elements given as JSON");
    mult->add_option("--k", multiply_opts.k, "Expected degree");
    mult->add_option("--lhs", multiply_opts.lhs, "Left factor")->required();
    mult->add_option("--rhs", multiply_opts.rhs, "Right factor")->required();
    common(mult);

    PosetOptions poset_opts;
    auto*        poset = app.add_subcommand("poset", "Hasse diagram of the order on partitions of k");
    poset->add_option("--k", poset_opts.k, "Degree")->required();
    poset->add_option("--format", poset_opts.format, "json or dot");
    common(poset);

    IntervalOptions interval_opts;
    auto*           iv = app.add_subcommand("interval", "An interval of the order on partitions");
    iv->add_option("--k", interval_opts.k, "Degree")->required();
    iv->add_option("--bottom", interval_opts.bottom, "Lower end, e.g. 8,7,4")->required();
    iv->add_option("--top", interval_opts.top, "Upper end, e.g. 6,5,3,2,2,1")->required();
    iv->add_option("--format", interval_opts.format, "json or dot");
    common(iv);

    SubmonoidOptions submonoid_opts;
    bool             count_flag = false;
    auto*            sub        = app.add_subcommand("submonoids", "Submonoids of U_k containing S_k");
    sub->add_option("--k", submonoid_opts.k, "Degree")->required();
    auto* list_flag = sub->add_flag("--list", submonoid_opts.list, "List every submonoid");
    sub->add_flag("--count", count_flag, "Print their number (default)")->excludes(list_flag);
    sub->add_option("--format", submonoid_opts.format, "json or dot (with --list)");
    sub->add_option("--bound", submonoid_opts.bound, "Largest lattice --list will produce");
    sub->add_flag("--progress", submonoid_opts.progress, "Report counting progress on stderr");
    common(sub);

    VerifyOptions verify_opts;
    auto*         verify = app.add_subcommand("verify", "Run a verification suite, print a JSON report");
    verify->add_option("--k", verify_opts.k, "Degree")->required();
    verify->add_option("--suite", verify_opts.suite, "all, order, covers, sumsquares or closure");
    common(verify);

    RepdimsOptions repdims_opts;
    auto* repdims = app.add_subcommand("repdims", "Irreducible dimensions and J-class sizes");
    repdims->add_option("--k", repdims_opts.k, "Degree")->required();
    repdims->add_option("--format", repdims_opts.format, "json or csv");
    common(repdims);

    std::vector<char const*> argv{"ubp"};
    for (auto const& a : args) {
      argv.push_back(a.c_str());
    }
    try {
      app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (CLI::ParseError const& e) {
      int const code = app.exit(e, out, err);
      return code == 0 ? success : usage_error;
    }

    std::ofstream file;
    if (!out_path.empty()) {
      file.open(out_path, std::ios::binary | std::ios::trunc);
      if (!file) {
        err << "error: cannot write " << out_path << '\n';
        return usage_error;
      }
    }
    Context ctx{out_path.empty() ? &out : &file, &err, threads, Cache::from_environment(!no_cache)};
    try {
      if (*enumerate) {
        return cmd_enumerate(ctx, enumerate_opts);
      }
      if (*mult) {
        return cmd_multiply(ctx, multiply_opts);
      }
      if (*poset) {
        return cmd_poset(ctx, poset_opts);
      }
      if (*iv) {
        return cmd_interval(ctx, interval_opts);
      }
      if (*sub) {
        return cmd_submonoids(ctx, submonoid_opts);
      }
      if (*verify) {
        return cmd_verify(ctx, verify_opts);
      }
      return cmd_repdims(ctx, repdims_opts);
    } catch (Error const& e) {
      err << "error: " << e.what() << '\n';
      return usage_error;
    }
  }

  inline int run(int argc, char** argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
    return run(std::vector<std::string>(argv + 1, argv + argc), out, err);
  }

}  // namespace ubp::cli

#endif  // UBP_CLI_APP_HPP_
