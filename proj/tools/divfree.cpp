// Command-line front end: element arithmetic, verification sweeps, module
// actions and orbits, the graded-intertwiner solver, the action-table
// classifier, and structure-constant export.
//
// Exit codes: 0 success, 1 verification failure, 2 usage or parse error,
// 3 dimension mismatch, 4 I/O error.

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include <divfree/intertwiner.hpp>
#include <divfree/io.hpp>
#include <divfree/verify.hpp>

namespace {

constexpr std::uint64_t kDefaultSeed = 20240817;

using divfree::Config;
using divfree::Space;

struct Context {
  std::optional<std::string> config_path;
  int exit_code = 0;

  Config config() const { return divfree::load_config(config_path); }
  Space space() const { return Space(config().pairing); }
};

void print(const std::string& json_text) { std::cout << json_text << "\n"; }

// Writes to the path when one is given (empty means stdout).
void emit(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::cout << text;
    if (text.empty() || text.back() != '\n') std::cout << "\n";
  } else {
    divfree::write_text_file(path, text);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Exact-arithmetic toolkit for the generalized Witt algebra, its divergence-free "
      "subalgebra, and their multiplicity-free graded modules"};
  app.require_subcommand(1);

  Context ctx;
  app.add_option("--config", ctx.config_path,
                 "JSON config file (default: $DIVFREE_CONFIG, then ./divfree.json)");

  // ---- bracket ----
  auto* cmd_bracket = app.add_subcommand("bracket", "Lie bracket of two elements");
  std::string bracket_u, bracket_v;
  cmd_bracket->add_option("u", bracket_u, "JSON file for the left element")->required();
  cmd_bracket->add_option("v", bracket_v, "JSON file for the right element")->required();
  cmd_bracket->callback([&] {
    const Space W = ctx.space();
    const auto u = divfree::witt_from_json(divfree::read_text_file(bracket_u));
    const auto v = divfree::witt_from_json(divfree::read_text_file(bracket_v));
    print(divfree::to_json(divfree::bracket(W, u, v)));
  });

  // ---- div ----
  auto* cmd_div = app.add_subcommand("div", "Divergence of an element");
  std::string div_u;
  cmd_div->add_option("u", div_u, "JSON file for the element")->required();
  cmd_div->callback([&] {
    const Space W = ctx.space();
    const auto u = divfree::witt_from_json(divfree::read_text_file(div_u));
    print(divfree::to_json(divfree::divergence(W, u)));
  });

  // ---- basis ----
  auto* cmd_basis = app.add_subcommand("basis", "Canonical basis of one graded component");
  std::string basis_grade;
  cmd_basis->add_option("--grade", basis_grade, "Grade as comma-separated integers")->required();
  cmd_basis->callback([&] {
    const Space W = ctx.space();
    const auto g = divfree::grade_from_csv(basis_grade);
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& e : divfree::s_grade_basis(W, g)) {
      nlohmann::ordered_json item;
      item["grade"] = e.grade.coords();
      nlohmann::ordered_json dir = nlohmann::ordered_json::array();
      for (const auto& c : e.direction.coords()) dir.push_back(c.to_string());
      item["direction"] = std::move(dir);
      arr.push_back(std::move(item));
    }
    print(arr.dump(2));
  });

  // ---- span-check ----
  auto* cmd_span = app.add_subcommand("span-check", "Generation witness over a window");
  int span_radius = 0, span_depth = 4;
  cmd_span->add_option("--radius", span_radius, "Window radius (default from config)");
  cmd_span->add_option("--depth", span_depth, "Maximum bracket applications")
      ->capture_default_str();
  cmd_span->callback([&] {
    const Config cfg = ctx.config();
    const Space W(cfg.pairing);
    const int radius = span_radius > 0 ? span_radius : cfg.default_radius;
    const auto report =
        divfree::span_check(W, divfree::GeneratorSet::standard(W), radius, span_depth);
    print(divfree::to_json(report));
    if (!report.all_ok()) ctx.exit_code = 1;
  });

  // ---- act ----
  auto* cmd_act = app.add_subcommand("act", "Apply an element to a group-algebra element");
  std::string act_u, act_f;
  cmd_act->add_option("u", act_u, "JSON file for the Witt element")->required();
  cmd_act->add_option("f", act_f, "JSON file for the group-algebra element")->required();
  cmd_act->callback([&] {
    const Space W = ctx.space();
    const auto u = divfree::witt_from_json(divfree::read_text_file(act_u));
    const auto f = divfree::group_algebra_from_json(divfree::read_text_file(act_f));
    print(divfree::to_json(divfree::act_on_group_algebra(W, u, f)));
  });

  // ---- orbit ----
  const auto orbit_action = [&](const std::string& spec_path, const std::string& seed_csv,
                                int radius_flag) {
    const Config cfg = ctx.config();
    const Space W(cfg.pairing);
    const auto spec = divfree::module_spec_from_json(divfree::read_text_file(spec_path));
    const auto seed = divfree::grade_from_csv(seed_csv);
    const int radius = radius_flag > 0 ? radius_flag : cfg.default_radius;
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& g : divfree::submodule_orbit(W, spec, seed, radius)) {
      arr.push_back(g.coords());
    }
    print(arr.dump(2));
  };

  auto* cmd_orbit = app.add_subcommand("orbit", "Generator orbit of a module basis vector");
  std::string orbit_spec, orbit_seed;
  int orbit_radius = 0;
  cmd_orbit->add_option("--spec", orbit_spec, "Module spec JSON file")->required();
  cmd_orbit->add_option("--seed-grade", orbit_seed, "Seed grade, comma-separated")->required();
  cmd_orbit->add_option("--radius", orbit_radius, "Window radius (default from config)");
  cmd_orbit->callback([&] { orbit_action(orbit_spec, orbit_seed, orbit_radius); });

  // ---- module ----
  auto* cmd_module = app.add_subcommand("module", "Graded module operations");
  cmd_module->require_subcommand(1);

  auto* mod_act = cmd_module->add_subcommand("act", "Apply an element to a module vector");
  std::string mact_spec, mact_elem, mact_vec;
  mod_act->add_option("--spec", mact_spec, "Module spec JSON file")->required();
  mod_act->add_option("--elem", mact_elem, "Divergence-free element JSON file")->required();
  mod_act->add_option("--vector", mact_vec, "Module vector JSON file")->required();
  mod_act->callback([&] {
    const Space W = ctx.space();
    const auto spec = divfree::module_spec_from_json(divfree::read_text_file(mact_spec));
    const auto u = divfree::witt_from_json(divfree::read_text_file(mact_elem));
    const auto v = divfree::module_vector_from_json(divfree::read_text_file(mact_vec));
    print(divfree::to_json(divfree::act(W, spec, u, v)));
  });

  auto* mod_verify = cmd_module->add_subcommand("verify", "Module axiom for one spec");
  std::string mver_spec;
  int mver_radius = 0, mver_samples = 3;
  std::uint64_t mver_seed = kDefaultSeed;
  mod_verify->add_option("--spec", mver_spec, "Module spec JSON file")->required();
  mod_verify->add_option("--radius", mver_radius, "Window radius (default from config)");
  mod_verify->add_option("--samples", mver_samples, "Extra random multi-term pairs")
      ->capture_default_str();
  mod_verify->add_option("--seed", mver_seed, "Random seed")->capture_default_str();
  mod_verify->callback([&] {
    const Config cfg = ctx.config();
    const Space W(cfg.pairing);
    const auto spec = divfree::module_spec_from_json(divfree::read_text_file(mver_spec));
    const int radius = mver_radius > 0 ? mver_radius : cfg.default_radius;
    const auto report = divfree::verify_module_axiom(W, spec, radius, mver_samples, mver_seed);
    print(divfree::to_json(report));
    if (!report.ok()) ctx.exit_code = 1;
  });

  auto* mod_orbit = cmd_module->add_subcommand("orbit", "Generator orbit of a basis vector");
  std::string morb_spec, morb_seed;
  int morb_radius = 0;
  mod_orbit->add_option("--spec", morb_spec, "Module spec JSON file")->required();
  mod_orbit->add_option("--seed-grade", morb_seed, "Seed grade, comma-separated")->required();
  mod_orbit->add_option("--radius", morb_radius, "Window radius (default from config)");
  mod_orbit->callback([&] { orbit_action(morb_spec, morb_seed, morb_radius); });

  // ---- verify ----
  auto* cmd_verify = app.add_subcommand("verify", "Verification sweeps");
  cmd_verify->require_subcommand(1);
  const auto finish_sweep = [&](const divfree::SweepReport& report) {
    print(divfree::to_json(report));
    if (!report.ok()) ctx.exit_code = 1;
  };

  auto* v_jacobi = cmd_verify->add_subcommand("jacobi", "Exhaustive Jacobi identity sweep");
  int vj_radius = 2, vj_jobs = 1;
  v_jacobi->add_option("--radius", vj_radius, "Grade window radius")->capture_default_str();
  v_jacobi->add_option("--jobs", vj_jobs, "Worker thread count")->capture_default_str();
  v_jacobi->callback(
      [&] { finish_sweep(divfree::jacobi_sweep(ctx.space(), vj_radius, vj_jobs)); });

  auto* v_div = cmd_verify->add_subcommand("div-identities", "Divergence identity samples");
  int vd_radius = 0, vd_samples = 1000;
  std::uint64_t vd_seed = kDefaultSeed;
  v_div->add_option("--radius", vd_radius, "Grade radius for sampled terms");
  v_div->add_option("--samples", vd_samples, "Sample count per identity")->capture_default_str();
  v_div->add_option("--seed", vd_seed, "Random seed")->capture_default_str();
  v_div->callback([&] {
    const Config cfg = ctx.config();
    const int radius = vd_radius > 0 ? vd_radius : cfg.default_radius;
    finish_sweep(
        divfree::divergence_identity_sweep(Space(cfg.pairing), radius, vd_samples, vd_seed));
  });

  auto* v_mod = cmd_verify->add_subcommand("module-axiom", "Module axiom sweep");
  std::string vm_family;
  int vm_radius = 2, vm_draws = 10;
  std::uint64_t vm_seed = kDefaultSeed;
  v_mod->add_option("--family", vm_family, "One family (trivial|M|A|B); default all")
      ->check(CLI::IsMember({"trivial", "M", "A", "B"}));
  v_mod->add_option("--radius", vm_radius, "Window radius")->capture_default_str();
  v_mod->add_option("--draws", vm_draws, "Parameter draws per family")->capture_default_str();
  v_mod->add_option("--seed", vm_seed, "Random seed")->capture_default_str();
  v_mod->callback([&] {
    const Space W = ctx.space();
    if (vm_family.empty()) {
      finish_sweep(divfree::module_axiom_sweep(W, vm_radius, vm_draws, vm_seed));
      return;
    }
    const divfree::Family fam = vm_family == "trivial" ? divfree::Family::Trivial
                                : vm_family == "M"     ? divfree::Family::M
                                : vm_family == "A"     ? divfree::Family::A
                                                       : divfree::Family::B;
    finish_sweep(divfree::module_axiom_sweep_family(W, fam, vm_radius, vm_draws, vm_seed));
  });

  auto* v_l52 = cmd_verify->add_subcommand("lemma52", "Composite-action constancy catalog");
  int v52_range = 5;
  v_l52->add_option("--range", v52_range, "Scan range for the index i")->capture_default_str();
  v_l52->callback([&] { finish_sweep(divfree::lemma52_suite(ctx.space(), v52_range)); });

  auto* v_l53 = cmd_verify->add_subcommand("lemma53", "Two-parameter grid catalog");
  int v53_range = 3;
  std::string v53_catalog = "default";
  v_l53->add_option("--range", v53_range, "Grid radius")->capture_default_str();
  v_l53->add_option("--catalog", v53_catalog, "Catalog name")
      ->check(CLI::IsMember({"default"}))
      ->capture_default_str();
  v_l53->callback([&] { finish_sweep(divfree::lemma53_suite(ctx.space(), v53_range)); });

  auto* v_span = cmd_verify->add_subcommand("span", "Bracket-span generation witness");
  int vs_radius = 2, vs_depth = 4;
  v_span->add_option("--radius", vs_radius, "Window radius")->capture_default_str();
  v_span->add_option("--depth", vs_depth, "Maximum bracket applications")->capture_default_str();
  v_span->callback([&] { finish_sweep(divfree::span_suite(ctx.space(), vs_radius, vs_depth)); });

  // ---- morph ----
  auto* cmd_morph = app.add_subcommand("morph", "Graded intertwiners between modules");
  cmd_morph->require_subcommand(1);

  auto* m_solve = cmd_morph->add_subcommand("solve", "Search for a graded intertwiner");
  std::string ms_m1, ms_m2;
  int ms_radius = 0, ms_shift_radius = -1;
  m_solve->add_option("--m1", ms_m1, "Domain module spec JSON file")->required();
  m_solve->add_option("--m2", ms_m2, "Codomain module spec JSON file")->required();
  m_solve->add_option("--radius", ms_radius, "Window radius (default from config)");
  m_solve->add_option("--shift-radius", ms_shift_radius,
                      "Candidate shift radius (default: window radius)");
  m_solve->callback([&] {
    const Config cfg = ctx.config();
    const Space W(cfg.pairing);
    const auto m1 = divfree::module_spec_from_json(divfree::read_text_file(ms_m1));
    const auto m2 = divfree::module_spec_from_json(divfree::read_text_file(ms_m2));
    const int radius = ms_radius > 0 ? ms_radius : cfg.default_radius;
    print(divfree::to_json(divfree::solve_intertwiner(W, m1, m2, radius, ms_shift_radius)));
  });

  auto* m_verify = cmd_morph->add_subcommand(
      "verify", "Solve, then independently re-check the equivariance of the result");
  std::string mv_m1, mv_m2;
  int mv_radius = 0;
  m_verify->add_option("--m1", mv_m1, "Domain module spec JSON file")->required();
  m_verify->add_option("--m2", mv_m2, "Codomain module spec JSON file")->required();
  m_verify->add_option("--radius", mv_radius, "Window radius (default from config)");
  m_verify->callback([&] {
    const Config cfg = ctx.config();
    const Space W(cfg.pairing);
    const auto m1 = divfree::module_spec_from_json(divfree::read_text_file(mv_m1));
    const auto m2 = divfree::module_spec_from_json(divfree::read_text_file(mv_m2));
    const int radius = mv_radius > 0 ? mv_radius : cfg.default_radius;
    const auto result = divfree::solve_intertwiner(W, m1, m2, radius);
    if (result.outcome != divfree::IntertwinerOutcome::Found) {
      print(divfree::to_json(result));
      ctx.exit_code = 1;
      return;
    }
    const auto report =
        divfree::verify_intertwiner(W, m1, m2, result.shift, result.scalars, radius);
    print(divfree::to_json(report));
    if (!report.ok()) ctx.exit_code = 1;
  });

  // ---- classify ----
  auto* cmd_classify = app.add_subcommand("classify", "Fit an action table to a module family");
  std::string cl_table;
  cmd_classify->add_option("--table", cl_table, "Action table JSON file");

  auto* cl_record = cmd_classify->add_subcommand("record", "Record the table of a known spec");
  std::string cr_spec;
  int cr_radius = 0;
  cl_record->add_option("--spec", cr_spec, "Module spec JSON file")->required();
  cl_record->add_option("--radius", cr_radius, "Window radius (default from config)");
  cl_record->callback([&] {
    const Config cfg = ctx.config();
    const Space W(cfg.pairing);
    const auto spec = divfree::module_spec_from_json(divfree::read_text_file(cr_spec));
    const int radius = cr_radius > 0 ? cr_radius : cfg.default_radius;
    print(divfree::to_json(divfree::record_action_table(W, spec, radius)));
  });

  cmd_classify->callback([&] {
    if (cl_record->parsed()) return;
    if (cl_table.empty()) {
      throw CLI::RequiredError("--table (or the `record` subcommand)");
    }
    const Space W = ctx.space();
    const auto table = divfree::action_table_from_json(divfree::read_text_file(cl_table));
    try {
      print(divfree::to_json(divfree::classify_table(W, table)));
    } catch (const divfree::TableInconsistency& e) {
      nlohmann::ordered_json j;
      j["error"] = "inconsistent-table";
      j["message"] = e.what();
      j["generators"] = e.generators();
      j["grade"] = e.grade().coords();
      print(j.dump(2));
      ctx.exit_code = 1;
    }
  });

  // ---- export ----
  auto* cmd_export = app.add_subcommand("export", "Structure constants over a window");
  int ex_radius = 0;
  std::string ex_format = "json", ex_out;
  cmd_export->add_option("--radius", ex_radius, "Window radius (default from config)");
  cmd_export->add_option("--format", ex_format, "json or csv")
      ->check(CLI::IsMember({"json", "csv"}))
      ->capture_default_str();
  cmd_export->add_option("--out", ex_out, "Output path (default: config output, then stdout)");
  cmd_export->callback([&] {
    const Config cfg = ctx.config();
    const Space W(cfg.pairing);
    const int radius = ex_radius > 0 ? ex_radius : cfg.default_radius;
    const std::string text = ex_format == "csv"
                                 ? divfree::export_structure_constants_csv(W, radius)
                                 : divfree::export_structure_constants_json(W, radius);
    emit(text, ex_out.empty() ? cfg.output : ex_out);
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  } catch (const divfree::TableInconsistency& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const divfree::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const divfree::DimensionError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const divfree::IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const divfree::ContractError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const divfree::DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const divfree::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return ctx.exit_code;
}
