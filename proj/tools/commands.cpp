#include "commands.hpp"

#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>

#include "zorich/brush.hpp"
#include "zorich/error.hpp"
#include "zorich/hairs.hpp"
#include "zorich/mesh.hpp"
#include "zorich/surfaces.hpp"

namespace zorich::cli {

using nlohmann::json;

namespace {

json point_json(const Point3& p) { return json::array({p.x1, p.x2, p.x3}); }

json config_json(const RunConfig& c) {
  json out = {{"L_samples", c.L_samples}, {"seed", c.seed}, {"depth", c.depth}, {"tolerances", c.tolerances},
              {"floor_budget", c.floor_budget}};
  out["lambda"] = c.lambda ? json(*c.lambda) : json(nullptr);
  out["lambda_fraction"] = c.lambda_fraction ? json(*c.lambda_fraction) : json(nullptr);
  return out;
}

void put_number(std::ostream& out, double v) {
  std::ostringstream s;
  s.precision(17);
  s << v;
  out << s.str();
}

void csv_row(std::ostream& out, std::initializer_list<double> values) {
  bool first = true;
  for (double v : values) {
    if (!first) out << ',';
    put_number(out, v);
    first = false;
  }
  out << '\n';
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string part;
  std::istringstream in(s);
  while (std::getline(in, part, sep)) parts.push_back(part);
  if (!s.empty() && s.back() == sep) parts.emplace_back();
  return parts;
}

void begin_section(Context& ctx) { ctx.manifest.section()["config"] = config_json(ctx.config); }

ResolvedParams section_params(Context& ctx) {
  ResolvedParams resolved = resolve_params(ctx.config);
  ctx.manifest.section()["params"] = params_json(resolved);
  return resolved;
}

}  // namespace

ResolvedParams resolve_params(const RunConfig& config) {
  ResolvedParams r;
  r.L_hat = estimate_bilipschitz_constant(config.L_samples, config.seed);
  r.lambda_max = max_lambda(r.L_hat);
  double lambda = kDefaultLambda;
  if (config.lambda) {
    lambda = *config.lambda;
  } else if (config.lambda_fraction) {
    lambda = *config.lambda_fraction * r.lambda_max;
  }
  r.params = certify_params(r.L_hat, lambda);
  if (config.floor_budget > 0) {
    r.floor = brush_floor(r.params, julia_height_probe(r.params), config.floor_budget);
    r.params.floor_height = r.floor.floor_height;
    validate(r.params);
  } else {
    r.floor.floor_height = r.params.floor_height;
  }
  return r;
}

json params_json(const ResolvedParams& r) {
  json out = {{"L_hat", r.L_hat},
              {"lambda", r.params.lambda},
              {"lambda_max", r.lambda_max},
              {"alpha", r.params.alpha},
              {"M", r.params.expansion_height},
              {"p_lambda", r.params.floor_height}};
  if (r.floor.julia_height) out["floor_julia_height"] = *r.floor.julia_height;
  if (r.floor.budget_exhausted) out["floor_budget_exhausted"] = true;
  return out;
}

Address parse_address(const json& value, int depth) {
  Address address;
  auto read_symbols = [](const json& list) {
    if (!list.is_array()) throw DomainError("address: expected a list of [r1, r2] symbols");
    std::vector<Cell> cells;
    for (const json& s : list) {
      if (!s.is_array() || s.size() != 2 || !s[0].is_number_integer() || !s[1].is_number_integer()) {
        throw DomainError("address: each symbol must be a pair of integers");
      }
      cells.push_back({s[0].get<std::int64_t>(), s[1].get<std::int64_t>()});
    }
    return cells;
  };
  if (value.is_array()) {
    address.symbols = read_symbols(value);
  } else if (value.is_object() && value.contains("period")) {
    const std::size_t length =
        value.contains("length") ? value["length"].get<std::size_t>() : static_cast<std::size_t>(depth) + 1;
    address = periodic_address(read_symbols(value["period"]), length);
  } else if (value.is_object() && value.contains("a1") && value.contains("a2")) {
    address = pair_encode(parse_rational(value["a1"].get<std::string>()), parse_rational(value["a2"].get<std::string>()),
                          depth);
  } else {
    throw DomainError("address: expected a symbol list, {period, length} or {a1, a2}");
  }
  if (address.size() <= static_cast<std::size_t>(depth)) {
    throw DomainError("address: need more than depth = " + std::to_string(depth) + " symbols, got " +
                      std::to_string(address.size()));
  }
  if (!address.all_even()) throw DomainError("address: every symbol must lie in an even cell");
  return address;
}

json address_json(const Address& address) {
  json out = json::array();
  for (const Cell& c : address.symbols) out.push_back({c.r1, c.r2});
  return out;
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read " + path);
  json value = json::parse(in, nullptr, false);
  if (value.is_discarded()) throw DomainError(path + ": not valid JSON");
  return value;
}

Point3 parse_point(const std::string& text) {
  const auto parts = split(text, ',');
  if (parts.size() != 3) throw UsageError("point must be x1,x2,x3");
  Point3 p;
  double* fields[3] = {&p.x1, &p.x2, &p.x3};
  for (int k = 0; k < 3; ++k) {
    try {
      std::size_t used = 0;
      *fields[k] = std::stod(parts[k], &used);
      if (used != parts[k].size()) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
      throw UsageError("point coordinate '" + parts[k] + "' is not a number");
    }
  }
  return p;
}

void cmd_params(Context& ctx) {
  begin_section(ctx);
  const ResolvedParams r = section_params(ctx);
  const json bundle = params_json(r);
  ctx.manifest.write_file("params.json", bundle.dump(2) + "\n");
  ctx.manifest.section()["results"] = bundle;
  ctx.out << bundle.dump(2) << '\n';
}

void cmd_eval(Context& ctx, const std::string& point_text, bool jacobian) {
  begin_section(ctx);
  const Params params = section_params(ctx).params;
  const Point3 x = parse_point(point_text);
  const Point3 y = zorich_map(x, params);
  json result = {{"point", point_json(x)}, {"image", point_json(y)}, {"norm", norm(y)}};
  if (jacobian) {
    const Eigen::Matrix3d j = zorich_jacobian(x, params);
    json rows = json::array();
    for (int r = 0; r < 3; ++r) rows.push_back({j(r, 0), j(r, 1), j(r, 2)});
    result["jacobian"] = rows;
    const auto sv = singular_values(j);
    result["singular_values"] = {sv[0], sv[1], sv[2]};
  }
  ctx.manifest.write_file("eval.json", result.dump(2) + "\n");
  ctx.manifest.section()["results"] = result;
  ctx.out << result.dump(2) << '\n';
}

void cmd_orbit(Context& ctx, const std::string& point_text, int steps) {
  if (steps < 0) throw UsageError("orbit: steps must be >= 0");
  begin_section(ctx);
  const Params params = section_params(ctx).params;
  const Point3 x = parse_point(point_text);
  const Orbit o = orbit(x, steps, params);
  ctx.manifest.write_file("orbit.csv", [&](std::ostream& out) {
    out << "k,x1,x2,x3\n";
    for (std::size_t k = 0; k < o.points.size(); ++k) {
      csv_row(out, {static_cast<double>(k), o.points[k].x1, o.points[k].x2, o.points[k].x3});
    }
  });
  const json result = {{"steps", o.points.size() - 1},
                       {"overflowed", o.overflowed},
                       {"class", to_string(classify_point(x, params, steps))}};
  ctx.manifest.section()["results"] = result;
  ctx.out << result.dump(2) << '\n';
}

void cmd_itinerary(Context& ctx, const std::string& point_text) {
  begin_section(ctx);
  const Params params = section_params(ctx).params;
  const Address a = itinerary(parse_point(point_text), ctx.config.depth, params);
  const json result = address_json(a);
  ctx.manifest.write_file("itinerary.json", result.dump() + "\n");
  ctx.manifest.section()["results"] = {{"symbols", a.size()}};
  ctx.out << result.dump() << '\n';
}

void cmd_hair(Context& ctx, const HairOptions& options) {
  begin_section(ctx);
  const Params params = section_params(ctx).params;
  const int depth = ctx.config.depth;
  const double tol = ctx.config.tolerance("tmin");
  const Address address = parse_address(read_json_file(options.address_file), depth);
  const double start = t_min(address, depth, tol, params);
  if (std::isinf(start)) throw NoHair("hair: address has no hair below the search cap");
  const Hair hair = trace_hair(address, default_t_grid(start, options.samples, options.span), depth, params, tol);

  ctx.manifest.write_file("hair.csv", [&](std::ostream& out) {
    out << "t,x1,x2,x3\n";
    for (const auto& s : hair.samples) csv_row(out, {s.t, s.point.x1, s.point.x2, s.point.x3});
  });
  json sidecar = {{"t_min", hair.t_min},
                  {"length_spherical", hair.length_spherical},
                  {"polyline_length", hair.polyline_length},
                  {"tail_length", hair.tail_length},
                  {"tail_is_estimate", true},
                  {"samples", hair.samples.size()}};
  ctx.manifest.write_file("hair.json", sidecar.dump(2) + "\n");

  if (options.density) {
    DensityOptions d;
    d.max_index = options.density_max_index;
    d.tol = tol;
    const double c = 0.5 * hair_length(trace_hair(address, depth, params, tol));
    const DensityProbe probe = density_probe(address, c, depth, params, d);
    json witnesses = json::array();
    for (const auto& w : probe.witnesses) {
      witnesses.push_back({{"index", w.index},
                           {"direction", {w.direction.r1, w.direction.r2}},
                           {"multiplier", w.multiplier},
                           {"t_min", w.t_min},
                           {"length", w.length},
                           {"endpoint", point_json(w.endpoint)},
                           {"distance", w.distance}});
    }
    json table = {{"c", probe.c},
                  {"epsilon", probe.epsilon},
                  {"top_height", probe.top_height},
                  {"truncation_t", probe.truncation_t},
                  {"truncation_point", point_json(probe.truncation_point)},
                  {"last_feasible_index", probe.last_feasible_index},
                  {"witnesses", witnesses}};
    ctx.manifest.write_file("density.json", table.dump(2) + "\n");
    sidecar["density"] = table;
  }
  ctx.manifest.section()["results"] = sidecar;
  ctx.out << sidecar.dump(2) << '\n';
}

void cmd_brush(Context& ctx, const BrushOptions& options) {
  begin_section(ctx);
  const Params params = section_params(ctx).params;
  const int depth = ctx.config.depth;
  const double tol = ctx.config.tolerance("tmin");
  const json list = read_json_file(options.addresses_file);
  if (!list.is_array() || list.empty()) throw DomainError("brush: expected a nonempty JSON list of addresses");

  std::vector<Address> addresses;
  for (const json& entry : list) addresses.push_back(parse_address(entry, depth));
  std::vector<double> heights;
  for (const Address& a : addresses) heights.push_back(t_min(a, depth, tol, params));

  ctx.manifest.write_file("brush_tmin.csv", [&](std::ostream& out) {
    out << "t_min,address_id\n";
    for (std::size_t k = 0; k < heights.size(); ++k) {
      if (std::isinf(heights[k])) {
        out << "inf";
      } else {
        put_number(out, heights[k]);
      }
      out << ',' << k << '\n';
    }
  });
  std::size_t points = 0;
  ctx.manifest.write_file("brush_points.csv", [&](std::ostream& out) {
    out << "x1,x2,x3,address_id,t\n";
    for (std::size_t k = 0; k < addresses.size(); ++k) {
      if (std::isinf(heights[k])) continue;
      for (double t : default_t_grid(heights[k], options.samples, options.span)) {
        if (!brush_membership(t, addresses[k], depth, params)) continue;
        const Point3 p = phi(t, addresses[k], depth, params);
        csv_row(out, {p.x1, p.x2, p.x3, static_cast<double>(k), t});
        ++points;
      }
    }
  });
  json t_mins = json::array();
  for (double h : heights) t_mins.push_back(std::isinf(h) ? json("inf") : json(h));
  const json result = {{"addresses", addresses.size()}, {"points", points}, {"t_min", t_mins}};
  ctx.manifest.section()["results"] = result;
  ctx.out << result.dump(2) << '\n';
}

void cmd_farey_encode(Context& ctx, const FareyOptions& options) {
  begin_section(ctx);
  const Rational target = parse_rational(options.target);
  const auto code = farey_encode(target, ctx.config.depth);
  const FareyInterval interval = farey_decode(code);
  const json list = code;
  ctx.manifest.write_file("farey_code.json", list.dump() + "\n");
  ctx.manifest.section()["results"] = {
      {"target", to_string(target)}, {"lo", to_string(interval.lo)}, {"hi", to_string(interval.hi)}};
  ctx.out << list.dump() << '\n';
}

void cmd_farey_decode(Context& ctx, const FareyOptions& options) {
  begin_section(ctx);
  std::vector<std::int64_t> code;
  if (options.code.find_first_not_of("-0123456789, ") == std::string::npos) {
    for (const auto& part : split(options.code, ',')) {
      try {
        code.push_back(std::stoll(part));
      } catch (const std::exception&) {
        throw UsageError("farey decode: bad code entry '" + part + "'");
      }
    }
  } else {
    const json list = read_json_file(options.code);
    if (!list.is_array()) throw DomainError("farey decode: expected a JSON list of integers");
    for (const json& v : list) {
      if (!v.is_number_integer()) throw DomainError("farey decode: expected a JSON list of integers");
      code.push_back(v.get<std::int64_t>());
    }
  }
  const FareyInterval interval = farey_decode(code);
  const json result = {{"lo", to_string(interval.lo)}, {"hi", to_string(interval.hi)}};
  ctx.manifest.write_file("farey_interval.json", result.dump(2) + "\n");
  ctx.manifest.section()["results"] = result;
  ctx.out << result.dump() << '\n';
}

void cmd_soshs(Context& ctx, const ExportOptions& options) {
  begin_section(ctx);
  const MeshFormat format = parse_mesh_format(options.format);
  const SoshsTree tree = soshs_build(options.size);
  const std::string name = "soshs_depth" + std::to_string(options.size) + "." + to_string(format);
  ctx.manifest.write_file(name, [&](std::ostream& out) { write_boxes(out, soshs_boxes(tree), {}, format); });
  const json result = {{"depth", tree.depth()},
                       {"leaves", tree.leaf_count()},
                       {"vertices", 8 * tree.leaf_count()},
                       {"faces", 12 * tree.leaf_count()},
                       {"file", name}};
  ctx.manifest.section()["results"] = result;
  ctx.out << result.dump(2) << '\n';
}

void cmd_wild(Context& ctx, const ExportOptions& options) {
  begin_section(ctx);
  const MeshFormat format = parse_mesh_format(options.format);
  const auto chain = wild_hair_chain(options.size);
  const ChainCheck check = check_wild_chain(chain);
  const auto lines = wild_polylines(chain);
  std::size_t line_vertices = 0;
  for (const auto& l : lines) line_vertices += l.size();
  const std::string name = "wild_levels" + std::to_string(options.size) + "." + to_string(format);
  ctx.manifest.write_file(name, [&](std::ostream& out) { write_boxes(out, wild_boxes(chain), lines, format); });
  json tops = json::array();
  for (const auto& level : chain) tops.push_back(to_string(level.box.top()));
  const json result = {{"levels", chain.size()},
                       {"vertices", 8 * chain.size() + line_vertices},
                       {"faces", 12 * chain.size()},
                       {"lines", lines.size()},
                       {"tops", tops},
                       {"chained", check.chained},
                       {"contained", check.contained},
                       {"disjoint", check.disjoint},
                       {"min_margin", check.min_margin},
                       {"template_min_distance", check.template_min_distance},
                       {"file", name}};
  ctx.manifest.section()["results"] = result;
  ctx.out << result.dump(2) << '\n';
}

void cmd_embed(Context& ctx, const std::string& input) {
  begin_section(ctx);
  std::ifstream in(input);
  if (!in) throw IoError("cannot read " + input);
  std::string header;
  if (!std::getline(in, header)) throw DomainError("embed: empty input");
  const auto columns = split(header, ',');
  int ix = -1, iy = -1, iz = -1;
  for (int k = 0; k < static_cast<int>(columns.size()); ++k) {
    if (columns[k] == "x1") ix = k;
    if (columns[k] == "x2") iy = k;
    if (columns[k] == "x3") iz = k;
  }
  if (ix < 0 || iy < 0 || iz < 0) throw DomainError("embed: header must contain x1, x2 and x3");

  std::vector<std::pair<std::string, Point3>> rows;
  std::string line;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto cells = split(line, ',');
    if (cells.size() != columns.size()) {
      throw DomainError("embed: line " + std::to_string(line_no) + " has " + std::to_string(cells.size()) +
                        " fields, expected " + std::to_string(columns.size()));
    }
    try {
      rows.emplace_back(line, embed_H(std::stod(cells[ix]), std::stod(cells[iy]), std::stod(cells[iz])));
    } catch (const std::invalid_argument&) {
      throw DomainError("embed: line " + std::to_string(line_no) + " has a non-numeric coordinate");
    }
  }
  ctx.manifest.write_file("embed.csv", [&](std::ostream& out) {
    out << header << ",h1,h2,h3\n";
    for (const auto& [text, h] : rows) {
      out << text << ',';
      put_number(out, h.x1);
      out << ',';
      put_number(out, h.x2);
      out << ',';
      put_number(out, h.x3);
      out << '\n';
    }
  });
  const json result = {{"rows", rows.size()}};
  ctx.manifest.section()["results"] = result;
  ctx.out << result.dump(2) << '\n';
}

}  // namespace zorich::cli
