#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>
#include <optional>
#include <random>
#include <string>

#include "leff/dot.hpp"
#include "leff/json_io.hpp"
#include "leff/lifts.hpp"

namespace {

using namespace leff;

struct RunConfig {
  std::string format = "json";
  std::uint64_t seed = 0;
  std::uint64_t budget = DetectOptions{}.pair_budget;
};

void emit(const RunConfig& cfg, const Json& out) {
  if (cfg.format == "text")
    std::cout << out.dump(2) << "\n";
  else
    std::cout << out.dump() << "\n";
}

Mask parse_initial(const std::string& csv, const std::vector<std::string>& ground) {
  if (csv.empty()) return 0;
  Json arr = Json::array();
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) arr.push_back(item);
  return mask_from_json(arr, ground);
}

Json trace_json(const CascadeTrace& trace, const std::vector<std::string>& ground) {
  Json states = Json::array();
  for (Mask m : trace.states) states.push_back(mask_to_json(m, ground));
  return states;
}

int run_check_poset(const RunConfig& cfg, const std::string& path) {
  const PreorderPtr p = preorder_from_json(load_json_file(path));
  Json out{{"elements", p->size()},
           {"is_poset", p->is_antisymmetric()},
           {"finitely_cocomplete", is_finitely_cocomplete(*p)}};
  if (auto b = bottom(*p)) out["bottom"] = element_to_json(*p, *b);
  if (auto t = top(*p)) out["top"] = element_to_json(*p, *t);
  emit(cfg, out);
  return 0;
}

int run_simulate(const RunConfig& cfg, const std::string& path, const std::string& initial,
                 bool with_trace) {
  const Description d = description_from_json(load_json_file(path));
  const CascadeTrace trace = cascade_trace(d, parse_initial(initial, d.ground));
  Json out{{"final", mask_to_json(trace.final_state(), d.ground)},
           {"converged_at", trace.converged_at}};
  if (with_trace) out["trace"] = trace_json(trace, d.ground);
  emit(cfg, out);
  return 0;
}

int run_simulate_timed(const RunConfig& cfg, const std::string& path,
                       std::optional<int> horizon) {
  const TimedDescription td = timed_description_from_json(load_json_file(path));
  const TimedSystem system(td, horizon.value_or(td.stabilization_horizon()));
  const Trajectory ev = system.eval();
  Json frames = Json::array();
  for (Mask m : ev.states) frames.push_back(mask_to_json(m, td.ground));
  emit(cfg, Json{{"horizon", system.horizon()},
                 {"trajectory", std::move(frames)},
                 {"colim", mask_to_json(colim(ev), td.ground)}});
  return 0;
}

int run_phenome(const RunConfig& cfg, const std::string& path) {
  const Description d = description_from_json(load_json_file(path));
  emit(cfg, Json{{"phenome", mask_to_json(phenome_of(d), d.ground)}});
  return 0;
}

int run_merge(const RunConfig& cfg, const std::string& path1, const std::string& path2) {
  const Description merged = merge(description_from_json(load_json_file(path1)),
                                   description_from_json(load_json_file(path2)));
  emit(cfg, description_to_json(merged));
  return 0;
}

int run_check_veil(const RunConfig& cfg, const std::string& path) {
  const Veil v = veil_from_json(load_json_file(path));
  Json adjoint = Json::array();
  for (int p = 0; p < v.phenome().size(); ++p)
    adjoint.push_back(Json::array({element_to_json(v.phenome(), p),
                                   element_to_json(v.system(), v.left_adjoint(p))}));
  emit(cfg, Json{{"is_veil", true},
                 {"system_size", v.system().size()},
                 {"phenome_size", v.phenome().size()},
                 {"left_adjoint", std::move(adjoint)}});
  return 0;
}

int run_detect_effects(const RunConfig& cfg, const std::string& path, bool exhaustive,
                       std::optional<int> samples) {
  const Veil v = veil_from_json(load_json_file(path));
  DetectOptions opts;
  opts.pair_budget = cfg.budget;
  opts.seed = cfg.seed;
  if (samples.has_value() && !exhaustive) {
    opts.mode = DetectMode::sampled;
    opts.samples = *samples;
  }
  const auto witnesses = detect_effects(v, opts);
  Json records = Json::array();
  for (const EffectWitness& w : witnesses) records.push_back(witness_to_json(v, w));
  emit(cfg, Json{{"mode", opts.mode == DetectMode::exhaustive ? "exhaustive" : "sampled"},
                 {"witnesses", std::move(records)},
                 {"sustains_effects", !witnesses.empty()},
                 {"certified_no_effects",
                  witnesses.empty() && opts.mode == DetectMode::exhaustive}});
  return 0;
}

int run_factorize(const RunConfig& cfg, const std::string& path) {
  const Veil v = veil_from_json(load_json_file(path));
  const VeilFactorization f = factorize(v);
  emit(cfg, Json{{"system_size", v.system().size()},
                 {"phenome_size", v.phenome().size()},
                 {"mid", poset_to_json(f.mid)},
                 {"pi_surjective", true},
                 {"iota_injective", true},
                 {"recomposes", true}});
  return 0;
}

int run_factor(const RunConfig& cfg, const std::string& path) {
  const MonotoneMap f = map_from_json(load_json_file(path));
  const MapFactorization fac = factor(f);

  Json classes = Json::array();
  for (const auto& members : fac.congruence.classes) {
    Json cls = Json::array();
    for (int m : members) cls.push_back(element_to_json(f.domain(), m));
    classes.push_back(std::move(cls));
  }
  Json g = Json::array();
  for (int c = 0; c < fac.q.poset.size(); ++c)
    g.push_back(Json::array(
        {fac.q.poset.label(c),
         element_to_json(f.codomain(), fac.image.codomain_index[fac.g(c)])}));

  Json out{{"classes", std::move(classes)},
           {"quotient", poset_to_json(fac.q.poset)},
           {"image", poset_to_json(fac.image.poset)},
           {"g", std::move(g)}};

  bool injective = true;
  std::vector<bool> seen(f.codomain().size(), false);
  bool surjective_all = true;
  for (int x = 0; x < f.domain().size(); ++x) {
    if (seen[f(x)]) injective = false;
    seen[f(x)] = true;
  }
  for (int q = 0; q < f.codomain().size(); ++q)
    if (!seen[q]) surjective_all = false;
  out["is_veil_injective_criterion"] =
      injective ? Json(injective_criterion(f)) : Json(nullptr);
  out["is_veil_surjective_criterion"] =
      surjective_all ? Json(surjective_criterion(f)) : Json(nullptr);
  emit(cfg, out);
  return 0;
}

int run_lift(const RunConfig& cfg, const std::string& path) {
  const MonotoneMap f = map_from_json(load_json_file(path));
  const LiftedVeil lifted = lift_map(f);

  Json checks = Json::array();
  if (is_finitely_cocomplete(f.domain()) && is_finitely_cocomplete(f.codomain())) {
    std::mt19937_64 rng(cfg.seed);
    std::uniform_int_distribution<int> pick(0, f.domain().size() - 1);
    const int spots = std::min(16, f.domain().size() * f.domain().size());
    for (int k = 0; k < spots; ++k) {
      const int p = pick(rng);
      const int q = pick(rng);
      const auto [base, through_lift] = lift_preserves_effects(f, p, q);
      checks.push_back(Json{{"p", element_to_json(f.domain(), p)},
                            {"p_prime", element_to_json(f.domain(), q)},
                            {"effect", base},
                            {"lifted_effect", through_lift}});
    }
  }
  emit(cfg, Json{{"domain_filters", static_cast<int>(lifted.domain.filters.size())},
                 {"codomain_filters", static_cast<int>(lifted.codomain.filters.size())},
                 {"is_veil", true},
                 {"effect_equivalence_spot_checks", std::move(checks)}});
  return 0;
}

int run_check_commute(const RunConfig& cfg, const std::string& path) {
  const TimedDescription td = timed_description_from_json(load_json_file(path));
  const CommuteReport r = commuting_square_check(td);
  emit(cfg, Json{{"pass", r.pass},
                 {"lhs", mask_to_json(r.lhs, td.ground)},
                 {"rhs", mask_to_json(r.rhs, td.ground)}});
  return 0;
}

int run_export_dot(const std::string& path, const std::string& initial) {
  const Json j = load_json_file(path);
  if (j.is_object() && (j.contains("rules") || j.contains("thresholds"))) {
    const Description d = description_from_json(j);
    std::cout << trace_to_dot(cascade_trace(d, parse_initial(initial, d.ground)), d.ground);
  } else {
    std::cout << poset_to_dot(*poset_from_json(j));
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"finite order-theoretic systems, veils and generative effects"};
  app.require_subcommand(1);

  RunConfig cfg;
  if (const char* env = std::getenv("LATTICE_EFFECTS_BUDGET"))
    cfg.budget = std::strtoull(env, nullptr, 10);
  app.add_option("--format", cfg.format, "output format: json or text")
      ->check(CLI::IsMember({"json", "text"}));
  app.add_option("--seed", cfg.seed, "seed for all sampled modes");
  app.add_option("--budget", cfg.budget, "enumeration budget (pairs)");

  std::string path, path2, initial;
  bool with_trace = false, exhaustive = false;
  std::optional<int> samples, horizon;

  CLI::App* check_poset = app.add_subcommand("check-poset", "validate a poset file");
  check_poset->add_option("input", path)->required();

  CLI::App* simulate = app.add_subcommand("simulate", "run a cascade");
  simulate->add_option("input", path)->required();
  simulate->add_option("--initial", initial, "comma-separated initially infected nodes");
  simulate->add_flag("--trace", with_trace, "include the full state sequence");

  CLI::App* simulate_timed = app.add_subcommand("simulate-timed", "run a delayed cascade");
  simulate_timed->add_option("input", path)->required();
  simulate_timed->add_option("--horizon", horizon, "time horizon (default: |Σ|·(d_max+1))");

  CLI::App* phenome = app.add_subcommand("phenome", "least fixed point from the empty start");
  phenome->add_option("input", path)->required();

  CLI::App* merge_cmd = app.add_subcommand("merge", "merge two descriptions");
  merge_cmd->add_option("first", path)->required();
  merge_cmd->add_option("second", path2)->required();

  CLI::App* check_veil = app.add_subcommand("check-veil", "validate a veil or monotone map");
  check_veil->add_option("input", path)->required();

  CLI::App* detect = app.add_subcommand("detect-effects", "search for generative effects");
  detect->add_option("input", path)->required();
  detect->add_flag("--exhaustive", exhaustive, "check every system pair (default)");
  detect->add_option("--samples", samples, "sampled mode with this many draws");

  CLI::App* factorize_cmd = app.add_subcommand("factorize", "surjective-injective veil split");
  factorize_cmd->add_option("input", path)->required();

  CLI::App* factor_cmd = app.add_subcommand("factor", "quotient/image factorization of a map");
  factor_cmd->add_option("input", path)->required();

  CLI::App* lift_cmd = app.add_subcommand("lift", "lift a map to a veil on filter lattices");
  lift_cmd->add_option("input", path)->required();

  CLI::App* commute = app.add_subcommand("check-commute", "colim∘eval = eval∘agg");
  commute->add_option("input", path)->required();

  CLI::App* export_dot = app.add_subcommand("export-dot", "DOT rendering of a poset or cascade");
  export_dot->add_option("input", path)->required();
  export_dot->add_option("--initial", initial, "initial nodes for cascade inputs");

  CLI11_PARSE(app, argc, argv);

  try {
    if (check_poset->parsed()) return run_check_poset(cfg, path);
    if (simulate->parsed()) return run_simulate(cfg, path, initial, with_trace);
    if (simulate_timed->parsed()) return run_simulate_timed(cfg, path, horizon);
    if (phenome->parsed()) return run_phenome(cfg, path);
    if (merge_cmd->parsed()) return run_merge(cfg, path, path2);
    if (check_veil->parsed()) return run_check_veil(cfg, path);
    if (detect->parsed()) return run_detect_effects(cfg, path, exhaustive, samples);
    if (factorize_cmd->parsed()) return run_factorize(cfg, path);
    if (factor_cmd->parsed()) return run_factor(cfg, path);
    if (lift_cmd->parsed()) return run_lift(cfg, path);
    if (commute->parsed()) return run_check_commute(cfg, path);
    if (export_dot->parsed()) return run_export_dot(path, initial);
  } catch (const validation_error& e) {
    std::cout << error_to_json(e).dump() << "\n";
    return 2;
  } catch (const internal_error& e) {
    std::cout << Json{{"error", Json{{"kind", "InternalInvariantViolation"},
                                     {"message", e.what()}}}}
                     .dump()
              << "\n";
    return 1;
  }
  return 0;
}
