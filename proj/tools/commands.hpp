#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "output.hpp"
#include "run_config.hpp"
#include "zorich/family.hpp"
#include "zorich/symbolic.hpp"

namespace zorich::cli {

struct Context {
  RunConfig config;
  Manifest manifest;
  std::ostream& out;
};

struct ResolvedParams {
  double L_hat = 0.0;
  double lambda_max = 0.0;
  Params params;
  FloorEstimate floor;
};

/// Estimates L_hat, picks lambda (explicit, fraction of lambda_max, or the
/// default) and certifies the bundle.
ResolvedParams resolve_params(const RunConfig& config);
nlohmann::json params_json(const ResolvedParams& resolved);

/// Address from JSON: a list of [r1, r2] symbols, {"period": [...], "length": n}
/// or {"a1": "p/q", "a2": "p/q"} (Farey pair encoding at `depth`).
Address parse_address(const nlohmann::json& value, int depth);
nlohmann::json address_json(const Address& address);
nlohmann::json read_json_file(const std::string& path);

Point3 parse_point(const std::string& text);

struct HairOptions {
  std::string address_file;
  std::size_t samples = 64;
  double span = 5.0;
  bool density = false;
  int density_max_index = 10;
};

struct BrushOptions {
  std::string addresses_file;
  std::size_t samples = 8;
  double span = 5.0;
};

struct FareyOptions {
  std::string target;
  std::string code;  ///< comma list or path to a JSON list
};

struct ExportOptions {
  int size = 0;  ///< soshs depth or wild level count
  std::string format = "obj";
};

void cmd_params(Context& ctx);
void cmd_eval(Context& ctx, const std::string& point, bool jacobian);
void cmd_orbit(Context& ctx, const std::string& point, int steps);
void cmd_itinerary(Context& ctx, const std::string& point);
void cmd_hair(Context& ctx, const HairOptions& options);
void cmd_brush(Context& ctx, const BrushOptions& options);
void cmd_farey_encode(Context& ctx, const FareyOptions& options);
void cmd_farey_decode(Context& ctx, const FareyOptions& options);
void cmd_soshs(Context& ctx, const ExportOptions& options);
void cmd_wild(Context& ctx, const ExportOptions& options);
void cmd_embed(Context& ctx, const std::string& input);

}  // namespace zorich::cli
