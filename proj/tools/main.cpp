#include <chrono>
#include <iostream>

#include <CLI11.hpp>

#include "commands.hpp"
#include "zorich/error.hpp"

namespace {

constexpr const char* kFooter = R"(Output files (under output_dir, listed in manifest.json with SHA-256):
  orbit.csv          k,x1,x2,x3
  hair.csv           t,x1,x2,x3           (first row is the endpoint at t_min)
  hair.json          t_min, length_spherical, polyline_length, tail_length
  density.json       witness table of the endpoint-density probe (hair --density)
  brush_tmin.csv     t_min,address_id     (inf when no hair below the search cap)
  brush_points.csv   x1,x2,x3,address_id,t
  embed.csv          input columns followed by h1,h2,h3
  soshs_depthN.*     leaf cuboids, 8 vertices and 12 triangles each
  wild_levelsN.*     cuboids, then one polyline per knotted arc
Mesh formats: obj (v/f/l), ply (vertex/face/edge), csv (record,a,b,c), json.
Address files: [[r1,r2],...], {"period": [[r1,r2],...], "length": n} or {"a1": "p/q", "a2": "p/q"}.
Settings: defaults < --config file < ZORICH_OUTPUT_DIR (output_dir only) < flags.
Exit codes: 0 ok, 1 usage, 2 domain or regime, 3 numeric failure, 4 I/O.)";

int exit_code(zorich::ErrorKind kind) {
  switch (kind) {
    case zorich::ErrorKind::Domain: return 2;
    case zorich::ErrorKind::Numeric: return 3;
    case zorich::ErrorKind::Io: return 4;
  }
  return 3;
}

}  // namespace

int main(int argc, char** argv) {
  using namespace zorich::cli;

  CLI::App app{"Zorich family dynamics, straight brushes and hairy-surface geometry", "zorich"};
  app.footer(kFooter);
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_file;
  std::vector<std::string> tolerance_flags;
  RunConfig flags;
  double lambda = 0.0, lambda_fraction = 0.0;
  auto* config_opt = app.add_option("--config", config_file, "flat key=value settings file");
  auto* lambda_opt = app.add_option("--lambda", lambda, "family parameter");
  auto* fraction_opt = app.add_option("--lambda-fraction", lambda_fraction, "lambda as a fraction of lambda_max");
  auto* samples_opt = app.add_option("--L-samples", flags.L_samples, "pair samples for the Lipschitz estimate");
  auto* seed_opt = app.add_option("--seed", flags.seed, "RNG seed");
  auto* depth_opt = app.add_option("--depth", flags.depth, "symbolic depth")->check(CLI::PositiveNumber);
  auto* tol_opt = app.add_option("--tol", tolerance_flags, "tolerance override name=value (tmin, forward_slack)");
  auto* dir_opt = app.add_option("--output-dir", flags.output_dir, "directory for outputs and manifest.json");
  auto* budget_opt = app.add_option("--floor-budget", flags.floor_budget, "Julia-height probes for p_lambda");

  std::string point;
  bool jacobian = false;
  int steps = 20;
  HairOptions hair;
  BrushOptions brush;
  FareyOptions farey;
  ExportOptions soshs{5, "obj"};
  ExportOptions wild{6, "obj"};
  std::string embed_input;

  auto* params_cmd = app.add_subcommand("params", "estimate L_hat and certify lambda, alpha, M, p_lambda");
  auto* eval_cmd = app.add_subcommand("eval", "evaluate lambda Z at a point");
  eval_cmd->add_option("--point", point, "x1,x2,x3")->required();
  eval_cmd->add_flag("--jacobian", jacobian, "include the finite-difference Jacobian");
  auto* orbit_cmd = app.add_subcommand("orbit", "forward orbit and escape classification");
  orbit_cmd->add_option("--point", point, "x1,x2,x3")->required();
  orbit_cmd->add_option("--steps", steps, "iterations");
  auto* itin_cmd = app.add_subcommand("itinerary", "even-cell itinerary of a point");
  itin_cmd->add_option("--point", point, "x1,x2,x3")->required();
  auto* hair_cmd = app.add_subcommand("hair", "trace one hair and its endpoint");
  hair_cmd->add_option("--address", hair.address_file, "address JSON file")->required();
  hair_cmd->add_option("--samples", hair.samples, "grid size including t_min")->check(CLI::Range(2, 100000));
  hair_cmd->add_option("--span", hair.span, "grid extent above t_min")->check(CLI::PositiveNumber);
  hair_cmd->add_flag("--density", hair.density, "run the endpoint-density probe with c = half the length");
  hair_cmd->add_option("--density-max-index", hair.density_max_index, "highest symbol index to perturb");
  auto* brush_cmd = app.add_subcommand("brush", "t_min and brush points for a list of addresses");
  brush_cmd->add_option("--addresses", brush.addresses_file, "JSON list of addresses")->required();
  brush_cmd->add_option("--samples", brush.samples, "heights per address")->check(CLI::Range(2, 100000));
  brush_cmd->add_option("--span", brush.span, "height extent above t_min")->check(CLI::PositiveNumber);
  auto* farey_cmd = app.add_subcommand("farey", "Farey-tree coding of exact rationals");
  farey_cmd->require_subcommand(1);
  auto* encode_cmd = farey_cmd->add_subcommand("encode", "target p/q to a code of depth + 1 integers");
  encode_cmd->add_option("--target", farey.target, "p/q, integer or decimal")->required();
  auto* decode_cmd = farey_cmd->add_subcommand("decode", "code to its Farey interval");
  decode_cmd->add_option("--code", farey.code, "comma list or JSON file")->required();
  auto* soshs_cmd = app.add_subcommand("soshs", "export the hairy-square cuboid tree");
  soshs_cmd->add_option("--depth", soshs.size, "tree depth in [2, 8]");
  soshs_cmd->add_option("--format", soshs.format, "obj, ply, csv or json");
  auto* wild_cmd = app.add_subcommand("wild", "export the knotted-hair chain");
  wild_cmd->add_option("--levels", wild.size, "levels in [1, 20]");
  wild_cmd->add_option("--format", wild.format, "obj, ply, csv or json");
  auto* embed_cmd = app.add_subcommand("embed", "map a point-cloud CSV through the cube embedding");
  embed_cmd->add_option("--input", embed_input, "CSV with x1,x2,x3 columns")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    const auto started = std::chrono::steady_clock::now();
    RunConfig config;
    if (*config_opt) load_config_file(config, config_file);
    apply_environment(config);
    if (*lambda_opt) config.lambda = lambda;
    if (*fraction_opt) {
      config.lambda_fraction = lambda_fraction;
      if (!*lambda_opt) config.lambda.reset();
    }
    if (*samples_opt) config.L_samples = flags.L_samples;
    if (*seed_opt) config.seed = flags.seed;
    if (*depth_opt) config.depth = flags.depth;
    if (*dir_opt) config.output_dir = flags.output_dir;
    if (*budget_opt) config.floor_budget = flags.floor_budget;
    for (const auto& entry : tolerance_flags) {
      const auto eq = entry.find('=');
      if (eq == std::string::npos) throw UsageError("--tol expects name=value");
      apply_setting(config, "tol." + entry.substr(0, eq), entry.substr(eq + 1));
    }

    Context ctx{config, Manifest(config.output_dir), std::cout};
    std::string name;
    if (*params_cmd) {
      name = "params";
      cmd_params(ctx);
    } else if (*eval_cmd) {
      name = "eval";
      cmd_eval(ctx, point, jacobian);
    } else if (*orbit_cmd) {
      name = "orbit";
      cmd_orbit(ctx, point, steps);
    } else if (*itin_cmd) {
      name = "itinerary";
      cmd_itinerary(ctx, point);
    } else if (*hair_cmd) {
      name = "hair";
      cmd_hair(ctx, hair);
    } else if (*brush_cmd) {
      name = "brush";
      cmd_brush(ctx, brush);
    } else if (*encode_cmd) {
      name = "farey_encode";
      cmd_farey_encode(ctx, farey);
    } else if (*decode_cmd) {
      name = "farey_decode";
      cmd_farey_decode(ctx, farey);
    } else if (*soshs_cmd) {
      name = "soshs";
      cmd_soshs(ctx, soshs);
    } else if (*wild_cmd) {
      name = "wild";
      cmd_wild(ctx, wild);
    } else if (*embed_cmd) {
      name = "embed";
      cmd_embed(ctx, embed_input);
    }
    const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    ctx.manifest.commit(name, elapsed);
    return 0;
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 1;
  } catch (const zorich::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_code(e.kind());
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 3;
  }
}
