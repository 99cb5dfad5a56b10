#pragma once

// Command-line surface. Every subcommand writes one JSON report (or a
// system document) to `out`. Exit status: 0 verdict true / bound holds,
// 1 verdict false / violation or finding, 2 usage or parse error.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "bollobas/constructions.hpp"
#include "bollobas/document.hpp"
#include "bollobas/saturation.hpp"
#include "bollobas/search.hpp"
#include "bollobas/verifiers.hpp"
#include "bollobas/weights.hpp"

namespace bollobas::cli {

inline constexpr int kExitTrue = 0;
inline constexpr int kExitFalse = 1;
inline constexpr int kExitUsage = 2;

/// Environment variable overriding the default search node budget.
inline constexpr const char* kBudgetEnv = "BOLLOBAS_BUDGET";

namespace detail {

inline std::vector<std::size_t> parse_size_list(const std::string& text, char sep = ',') {
  std::vector<std::size_t> out;
  std::stringstream ss(text);
  std::string piece;
  while (std::getline(ss, piece, sep)) {
    try {
      std::size_t used = 0;
      long long v = std::stoll(piece, &used);
      if (used != piece.size() || v < 0) throw std::invalid_argument(piece);
      out.push_back(static_cast<std::size_t>(v));
    } catch (const std::logic_error&) {
      throw PreconditionError("expected a non-negative integer, got '" + piece + "'");
    }
  }
  return out;
}

/// "1,2;3,4" -> {{1,2},{3,4}}
inline std::vector<std::vector<std::size_t>> parse_blocks(const std::string& text) {
  std::vector<std::vector<std::size_t>> out;
  std::stringstream ss(text);
  std::string block;
  while (std::getline(ss, block, ';')) out.push_back(parse_size_list(block));
  return out;
}

inline std::string read_input(const std::string& path, std::istream& in) {
  std::stringstream buf;
  if (path.empty() || path == "-") {
    buf << in.rdbuf();
  } else {
    std::ifstream file(path);
    if (!file) throw ParseError("cannot open input file", path);
    buf << file.rdbuf();
  }
  return buf.str();
}

inline FunctionalKind functional_from(const std::string& name, const std::string& p, std::size_t arity) {
  Functional f = parse_functional(name);
  if (f != Functional::tuza_sum) {
    if (!p.empty()) throw PreconditionError("--p only applies to the tuza functional");
    return FunctionalKind(f);
  }
  return FunctionalKind::tuza(p.empty() ? ProbabilityVector::uniform(arity) : parse_probability_vector(p));
}

inline std::size_t arity_of(const AnySystem& s) {
  return std::visit([](const auto& sys) { return sys.arity(); }, s);
}

template <class System>
Flavor default_flavor(const System& s) {
  if constexpr (is_set_system_v<System>) return Flavor::set;
  else return s.arity() == 2 ? Flavor::pair : Flavor::tuple;
}

/// The pair flavor needs a decomposition; use V itself when none is given.
template <class System>
System with_pair_context(const System& s, Flavor flavor) {
  if constexpr (!is_set_system_v<System>) {
    if (flavor == Flavor::pair && !s.decomposition())
      return s.with_decomposition(Decomposition<typename System::Scalar>::trivial(s.ambient_dim(), s.field()));
  }
  return s;
}

struct Context {
  std::vector<std::string> args;
  std::ostream& out;
  std::ostream& err;
};

inline Json header(const Context& ctx, const std::string& command) {
  Json j;
  j["command"] = command;
  j["args"] = ctx.args;
  return j;
}

inline void emit(const Context& ctx, const Json& report) { ctx.out << report.dump(2) << "\n"; }

}  // namespace detail

/// Run one command line (args excludes the program name).
inline int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  using namespace detail;
  Context ctx{args, out, err};

  CLI::App app{"Exact verification, weighing, saturation and search for Bollobás-type systems", "bollobas"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Show help for every subcommand");

  std::string input;
  auto add_input = [&](CLI::App* sub) { sub->add_option("input", input, "System document path (default: stdin)"); };

  // verify
  auto* verify_cmd = app.add_subcommand("verify", "Check a system against a condition");
  std::string kind = "skew", bound;
  bool monotone = false;
  verify_cmd->add_option("--kind", kind, "bollobas | skew | weak")->capture_default_str();
  verify_cmd->add_flag("--monotone", monotone, "Also require a_1<=...<=a_m and b_1>=...>=b_m");
  verify_cmd->add_option("--bound", bound, "Also certify: uniform | alon | block-uniform | cardinality");
  add_input(verify_cmd);

  // weight
  auto* weight_cmd = app.add_subcommand("weight", "Evaluate a weight functional and its licensed bound");
  std::string functional, p_text;
  weight_cmd->add_option("--functional", functional,
                         "bollobas | yue | partitioned-yue | block-product | tuza | scott-wilmer | hegedus-frankl")
      ->required();
  weight_cmd->add_option("--p", p_text, "Probability vector for tuza, e.g. 1/2,1/4,1/4 (default uniform)");
  add_input(weight_cmd);

  // saturate
  auto* saturate_cmd = app.add_subcommand("saturate", "Fill up until every tuple is full");
  std::string flavor;
  bool trace = false, verify_each = false;
  saturate_cmd->add_option("--flavor", flavor, "set | pair | tuple (default from the system)");
  saturate_cmd->add_option("--p", p_text, "Probability vector tracked for set/tuple flavors");
  saturate_cmd->add_flag("--trace", trace, "Include every step in the report");
  saturate_cmd->add_flag("--verify-each-step", verify_each, "Re-verify the condition after every step");
  add_input(saturate_cmd);

  // certify
  auto* certify_cmd = app.add_subcommand("certify", "Type-class certificate for a system of full tuples");
  bool saturate_first = false;
  certify_cmd->add_option("--flavor", flavor, "set | pair | tuple (default from the system)");
  certify_cmd->add_option("--p", p_text, "Probability vector for set/tuple flavors");
  certify_cmd->add_flag("--saturate", saturate_first, "Saturate before certifying");
  add_input(certify_cmd);

  // search
  auto* search_cmd = app.add_subcommand("search", "Exhaustive search over a small ground");
  std::string objective = "max-m", field_text, uniform_text;
  std::size_t n = 2, d = 2;
  std::optional<std::uint64_t> budget;
  std::optional<long> time_ms;
  bool no_prune = false, allow_large = false;
  search_cmd->add_option("--objective", objective, "max-m | max-weight | counterexample")->capture_default_str();
  search_cmd->add_option("--budget", budget, "Node budget");
  search_cmd->add_option("--time-ms", time_ms, "Wall-clock budget in milliseconds (not reproducible)");
  search_cmd->add_option("--kind", kind, "bollobas | skew | weak")->capture_default_str();
  search_cmd->add_option("--n", n, "Ground size or dimension")->capture_default_str();
  search_cmd->add_option("--d", d, "Arity")->capture_default_str();
  search_cmd->add_option("--field", field_text, "Search subspaces over this field (GF(p)); default: sets");
  search_cmd->add_option("--functional", functional, "Functional for weight objectives");
  search_cmd->add_option("--p", p_text, "Probability vector for tuza");
  search_cmd->add_option("--uniform", uniform_text, "Only tuples with these coordinate sizes, e.g. 1,1");
  search_cmd->add_flag("--no-prune", no_prune, "Disable bound-based pruning");
  search_cmd->add_flag("--allow-large", allow_large, "Lift the exhaustive ground-size guard");

  // construct
  auto* construct_cmd = app.add_subcommand("construct", "Emit an extremal family as a system document");
  std::string family, params_text, blocks_text;
  bool embed_flag = false;
  construct_cmd->add_option("--family", family,
                            "uniform-bollobas | complement-chain | partitioned-complement-chain | full-tuza-tuples")
      ->required();
  construct_cmd->add_option("--params", params_text, "a,b | n | n,d")->required();
  construct_cmd->add_option("--blocks", blocks_text, "Partition blocks, e.g. 1,2;3,4");
  construct_cmd->add_flag("--embed", embed_flag, "Emit the coordinate subspace system over Q^n");

  // embed
  auto* embed_cmd = app.add_subcommand("embed", "Map a set system to its coordinate subspace system");
  add_input(embed_cmd);

  // random
  auto* random_cmd = app.add_subcommand("random", "Emit a seeded random valid system");
  std::uint64_t seed = 0;
  std::size_t m = 4, blocks = 0;
  std::string ground = "set";
  random_cmd->add_option("--seed", seed, "Seed")->capture_default_str();
  random_cmd->add_option("--m", m, "Target number of tuples")->capture_default_str();
  random_cmd->add_option("--n", n, "Ground size or dimension")->capture_default_str();
  random_cmd->add_option("--d", d, "Arity")->capture_default_str();
  random_cmd->add_option("--kind", kind, "bollobas | skew | weak")->capture_default_str();
  random_cmd->add_option("--ground", ground, "set | rationals")->capture_default_str();
  random_cmd->add_option("--blocks", blocks, "Partition/decomposition block count (0 = none)")->capture_default_str();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitTrue;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitTrue;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kExitUsage;
  }

  try {
    if (*verify_cmd) {
      AnySystem system = parse_system(read_input(input, in));
      const Condition condition = parse_condition(kind);
      Json report = header(ctx, "verify");
      bool ok = std::visit(
          [&](const auto& sys) {
            auto r = verify(sys, ConditionKind{condition, sys.arity(), monotone});
            report["report"] = to_json(r);
            bool verdict = r.verdict;
            if (!bound.empty()) {
              Certificate c;
              using S = std::remove_cvref_t<decltype(sys)>;
              if (bound == "uniform") c = check_uniform_pair_bound(sys);
              else if (bound == "cardinality") c = check_cardinality_lemmas(sys);
              else if (bound == "alon") {
                if constexpr (is_set_system_v<S>) c = check_alon_bound(sys);
                else throw ShapeError("the alon bound applies to set systems");
              } else if (bound == "block-uniform") {
                if constexpr (!is_set_system_v<S>) c = check_block_uniform_bound(sys);
                else throw ShapeError("the block-uniform bound applies to subspace systems; use alon for sets");
              } else {
                throw PreconditionError("unknown bound '" + bound + "'");
              }
              report["certificate"] = to_json(c);
              verdict = verdict && c.holds;
            }
            return verdict;
          },
          system);
      emit(ctx, report);
      return ok ? kExitTrue : kExitFalse;
    }

    if (*weight_cmd) {
      AnySystem system = parse_system(read_input(input, in));
      FunctionalKind f = functional_from(functional, p_text, arity_of(system));
      Json report = header(ctx, "weight");
      report["functional"] = to_json(f);
      int code = std::visit(
          [&](const auto& sys) {
            bollobas::detail::check_functional_shape(sys, f);
            try {
              auto v = evaluate_inequality(sys, f);
              report["verdict"] = to_json(v);
              return v.holds ? kExitTrue : kExitFalse;
            } catch (const LicenseError& e) {
              report["verdict"] = {{"licensed", false},
                                   {"value", rational_text(omega(sys, f))},
                                   {"bound", rational_text(inequality_bound(sys, f))},
                                   {"reason", e.what()}};
              return kExitFalse;
            }
          },
          system);
      emit(ctx, report);
      return code;
    }

    if (*saturate_cmd || *certify_cmd) {
      const bool saturating = saturate_cmd->parsed();
      AnySystem system = parse_system(read_input(input, in));
      Json report = header(ctx, saturating ? "saturate" : "certify");
      int code = std::visit(
          [&](const auto& parsed) {
            Flavor fl = flavor.empty() ? default_flavor(parsed) : parse_flavor(flavor);
            auto sys = with_pair_context(parsed, fl);
            std::optional<ProbabilityVector> p;
            if (!p_text.empty()) p = parse_probability_vector(p_text);
            if (saturating || saturate_first) {
              SaturationOptions opts;
              opts.verify_each_step = verify_each;
              if (p) opts.tracked = {FunctionalKind::tuza(*p)};
              auto t = saturate(sys, fl, opts);
              report["trace"] = to_json(t, trace);
              if (saturating) return kExitTrue;
              auto c = certify_full_system(t.final_system, fl, p);
              report["certificate"] = to_json(c);
              return c.holds ? kExitTrue : kExitFalse;
            }
            auto c = certify_full_system(sys, fl, p);
            report["certificate"] = to_json(c);
            return c.holds ? kExitTrue : kExitFalse;
          },
          system);
      emit(ctx, report);
      return code;
    }

    if (*search_cmd) {
      SearchProblem problem;
      problem.ground.n = n;
      if (!field_text.empty()) problem.ground.field = parse_field(field_text);
      problem.arity = d;
      problem.condition = parse_condition(kind);
      problem.objective = parse_objective(objective);
      if (!functional.empty()) problem.functional = functional_from(functional, p_text, d);
      if (!uniform_text.empty()) problem.uniform_sizes = parse_size_list(uniform_text);
      problem.prune = !no_prune;
      if (allow_large) problem.ground_guard = std::numeric_limits<std::size_t>::max();
      if (budget) {
        problem.limits.node_budget = *budget;
      } else if (const char* env = std::getenv(kBudgetEnv)) {
        auto v = parse_size_list(env);
        if (v.size() != 1) throw PreconditionError(std::string(kBudgetEnv) + " must be a single integer");
        problem.limits.node_budget = v[0];
      }
      if (time_ms) problem.limits.time_budget = std::chrono::milliseconds(*time_ms);
      auto r = search_max(problem);
      Json report = header(ctx, "search");
      report["budget"] = problem.limits.node_budget;
      report["result"] = to_json(r);
      emit(ctx, report);
      if (problem.objective == Objective::counterexample) return r.exceeds_bound ? kExitFalse : kExitTrue;
      return kExitTrue;
    }

    if (*construct_cmd) {
      FamilyKind fk;
      fk.family = parse_family(family);
      fk.params = parse_size_list(params_text);
      if (!blocks_text.empty()) fk.blocks = parse_blocks(blocks_text);
      fk.embedded = embed_flag;
      out << serialize_system(construct(fk));
      return kExitTrue;
    }

    if (*embed_cmd) {
      AnySystem system = parse_system(read_input(input, in));
      const auto* sets = std::get_if<SetSystem>(&system);
      if (!sets) throw ShapeError("embed takes a set system");
      out << serialize_system(embed(*sets));
      return kExitTrue;
    }

    if (*random_cmd) {
      Ground g{n, std::nullopt};
      if (ground == "rationals") g.field = FieldTag::rationals();
      else if (ground != "set") throw PreconditionError("--ground must be set or rationals");
      out << serialize_system(random_valid_system(g, d, parse_condition(kind), m, seed, blocks));
      return kExitTrue;
    }
  } catch (const LicenseError& e) {
    Json report = header(ctx, app.get_subcommands().front()->get_name());
    report["licensed"] = false;
    report["reason"] = e.what();
    emit(ctx, report);
    return kExitFalse;
  } catch (const InvariantError& e) {
    err << "invariant violated: " << e.what() << "\n";
    return kExitFalse;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace bollobas::cli
