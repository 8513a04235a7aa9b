#include "cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <functional>
#include <json.hpp>
#include <optional>
#include <ostream>

#include "extform/bounds.hpp"
#include "extform/constructions.hpp"
#include "extform/errors.hpp"
#include "extform/io.hpp"
#include "extform/kernel.hpp"
#include "extform/slack.hpp"
#include "extform/zoo.hpp"

namespace extform::cli {

namespace {

using Json = nlohmann::ordered_json;

constexpr const char* kToolName = "extform";
constexpr const char* kVersion = "0.1.0";

Json to_json(const RatVector& v) {
  Json out = Json::array();
  for (const auto& x : v) out.push_back(to_string(x));
  return out;
}

Json to_json(const RatMatrix& m) {
  Json out = Json::array();
  for (const auto& row : m) out.push_back(to_json(row));
  return out;
}

Json report(const std::string& command, Json inputs, Json results, std::optional<std::uint32_t> seed) {
  Json doc;
  doc["schema"] = 1;
  doc["command"] = command;
  doc["inputs"] = std::move(inputs);
  doc["results"] = std::move(results);
  doc["provenance"] = {{"tool", kToolName}, {"version", kVersion}, {"seed", seed ? Json(*seed) : Json(nullptr)}};
  return doc;
}

std::string sanitized(std::string label, std::size_t index, const char* prefix) {
  if (label.empty()) return prefix + std::to_string(index + 1);
  std::replace_if(label.begin(), label.end(), [](char c) { return c == ' ' || c == '\t' || c == '#'; }, '_');
  return label;
}

HPoly load_hpoly(const std::string& path) { return io::read_hpoly(io::read_file(path)); }
VPoly load_vpoly(const std::string& path) { return io::read_vpoly(io::read_file(path)); }
Extension load_extension(const std::string& path) { return io::read_extension(io::read_file(path)); }

// Wraps file parsing so the message names the file.
template <class F>
auto with_file(const std::string& path, F&& f) {
  try {
    return f(path);
  } catch (const InputError& e) {
    throw InputError(path + ": " + e.what());
  }
}

struct Options {
  bool json = false;
};

// ---- zoo -------------------------------------------------------------------

struct ZooArgs {
  std::string family;
  std::size_t n = 0;
  std::optional<std::size_t> ell;
  std::vector<long> weights;
  std::optional<long> capacity;
  std::string hrep_file;
  std::string vrep_file;
};

int cmd_zoo(const ZooArgs& a, const Options& opt, std::ostream& out) {
  static const std::vector<std::string> families = {"matching", "permutahedron", "birkhoff", "spanning-tree",
                                                    "knapsack", "cube",          "cross",    "simplex"};
  if (std::find(families.begin(), families.end(), a.family) == families.end()) {
    throw InputError("zoo: unknown family '" + a.family + "'");
  }
  const bool knapsack = a.family == "knapsack";
  if (knapsack && (a.weights.empty() || !a.capacity)) throw InputError("zoo knapsack: needs --w and --W");
  if (!knapsack && a.n == 0) throw InputError("zoo " + a.family + ": needs n >= 1");
  if (a.ell && a.family != "matching") throw InputError("zoo: --ell applies to matching only");

  std::function<HPoly()> native_h;
  std::function<VPoly()> native_v;
  if (a.family == "matching") {
    if (!a.ell) native_h = [&] { return zoo::matching_hrep(a.n); };
    native_v = [&] { return zoo::matching_vrep(a.n, a.ell); };
  } else if (a.family == "permutahedron") {
    native_h = [&] { return zoo::permutahedron_hrep(a.n); };
    native_v = [&] { return zoo::permutahedron_vrep(a.n); };
  } else if (a.family == "birkhoff") {
    native_h = [&] { return zoo::birkhoff_hrep(a.n); };
    native_v = [&] { return zoo::birkhoff_vrep(a.n); };
  } else if (a.family == "spanning-tree") {
    native_h = [&] { return zoo::spanning_tree_hrep(a.n); };
    native_v = [&] { return zoo::spanning_tree_vrep(a.n); };
  } else if (knapsack) {
    native_v = [&] { return zoo::knapsack_vrep(a.weights, *a.capacity); };
  } else if (a.family == "cube") {
    native_h = [&] { return zoo::cube_hrep(a.n); };
  } else if (a.family == "cross") {
    native_v = [&] { return zoo::cross_polytope_vrep(a.n); };
  } else {
    native_h = [&] { return zoo::simplex_hrep(a.n); };
  }
  auto make_h = [&] { return native_h ? native_h() : hull(native_v()); };
  auto make_v = [&] { return native_v ? native_v() : vertices(native_h()); };

  Json inputs = {{"family", a.family}};
  if (knapsack) {
    inputs["w"] = a.weights;
    inputs["W"] = *a.capacity;
  } else {
    inputs["n"] = a.n;
  }
  if (a.ell) inputs["ell"] = *a.ell;
  Json results = Json::object();
  std::string summary;
  std::optional<std::string> stdout_text;

  if (!a.hrep_file.empty() || (a.vrep_file.empty() && native_h)) {
    const HPoly h = make_h();
    results["dim"] = h.dim();
    results["hrep"] = {{"inequalities", h.size()}, {"equations", h.equations().size()}};
    summary += "H: " + std::to_string(h.size()) + " inequalities, " + std::to_string(h.equations().size()) +
               " equations in R^" + std::to_string(h.dim());
    if (!a.hrep_file.empty()) {
      io::write_file(a.hrep_file, io::write_hpoly(h));
      results["hrep"]["file"] = a.hrep_file;
      summary += " -> " + a.hrep_file;
    } else {
      stdout_text = io::write_hpoly(h);
    }
    summary += "\n";
  }
  if (!a.vrep_file.empty() || (a.hrep_file.empty() && !native_h)) {
    const VPoly v = make_v();
    results["dim"] = v.dim();
    results["vrep"] = {{"points", v.count()}};
    summary += "V: " + std::to_string(v.count()) + " points in R^" + std::to_string(v.dim());
    if (!a.vrep_file.empty()) {
      io::write_file(a.vrep_file, io::write_vpoly(v));
      results["vrep"]["file"] = a.vrep_file;
      summary += " -> " + a.vrep_file;
    } else {
      stdout_text = io::write_vpoly(v);
    }
    summary += "\n";
  }
  if (opt.json) {
    out << report("zoo", inputs, results, std::nullopt).dump(2) << '\n';
  } else if (stdout_text) {
    out << *stdout_text;
  } else {
    out << summary;
  }
  return kOk;
}

// ---- construct -------------------------------------------------------------

struct ConstructArgs {
  std::string kind;
  std::size_t n = 0;
  std::size_t k = 0;
  std::vector<long> weights;
  std::optional<long> capacity;
  std::string network = "batcher";
  std::vector<std::string> parts;
  std::string output;
};

int cmd_construct(const ConstructArgs& a, const Options& opt, std::ostream& out) {
  Json inputs = {{"kind", a.kind}};
  Json results = Json::object();
  std::optional<std::uint32_t> seed;
  auto need_n = [&] {
    if (a.n == 0) throw InputError("construct " + a.kind + ": needs n >= 1");
    inputs["n"] = a.n;
  };
  Extension ext{HPoly(0), AffineMap::identity(0), ""};
  if (a.kind == "birkhoff") {
    need_n();
    ext = birkhoff_extension(a.n);
  } else if (a.kind == "martin") {
    need_n();
    ext = martin_spanning_tree_extension(a.n);
  } else if (a.kind == "knapsack") {
    if (a.weights.empty() || !a.capacity) throw InputError("construct knapsack: needs --w and --W");
    inputs["w"] = a.weights;
    inputs["W"] = *a.capacity;
    const DPNetwork net = knapsack_network(a.weights, *a.capacity);
    results["nodes"] = net.nodes.size();
    results["arcs"] = net.arcs.size();
    ext = knapsack_flow_extension(a.weights, *a.capacity);
  } else if (a.kind == "sortnet") {
    need_n();
    inputs["network"] = a.network;
    SortingNetwork net;
    if (a.network == "bubble") {
      net = bubble_network(a.n);
    } else if (a.network == "batcher") {
      net = batcher_network(a.n);
    } else {
      throw InputError("construct sortnet: --network must be bubble or batcher");
    }
    results["comparators"] = net.comparators.size();
    ext = sorting_network_extension(a.n, net);
  } else if (a.kind == "colorful") {
    need_n();
    if (a.k == 0) throw InputError("construct colorful: needs k >= 1");
    inputs["k"] = a.k;
    const ColoringFamily family = covering_coloring_family(a.n, a.k);
    seed = family.seed;
    results["colorings"] = family.colorings.size();
    results["family_certified"] = certify_coloring_family(family);
    ext = colorful_matching_extension(a.n, a.k);
  } else if (a.kind == "balas") {
    if (a.parts.empty()) throw InputError("construct balas: needs at least one --part file");
    inputs["parts"] = a.parts;
    std::vector<HPoly> parts;
    for (const auto& path : a.parts) {
      parts.push_back(with_file(path, [](const std::string& p) {
        const std::string text = io::read_file(p);
        return io::detect_format(text) == "VPOLY" ? hull(io::read_vpoly(text)) : io::read_hpoly(text);
      }));
    }
    ext = balas_union(parts);
  } else {
    throw InputError("construct: unknown kind '" + a.kind + "'");
  }
  results["name"] = ext.name;
  results["size"] = ext.size();
  results["dim"] = ext.q.dim();
  results["equations"] = ext.q.equations().size();
  results["target_dim"] = ext.target_dim();
  if (!a.output.empty()) {
    io::write_file(a.output, io::write_extension(ext));
    results["file"] = a.output;
  }
  if (opt.json) {
    out << report("construct", inputs, results, seed).dump(2) << '\n';
  } else if (a.output.empty()) {
    out << io::write_extension(ext);
  } else {
    out << ext.name << ": size " << ext.size() << ", R^" << ext.q.dim() << " -> R^" << ext.target_dim() << " -> "
        << a.output << '\n';
  }
  return kOk;
}

// ---- verify ----------------------------------------------------------------

int cmd_verify(const std::string& target_path, const std::string& ext_path, const Options& opt, std::ostream& out) {
  const std::string text = with_file(target_path, [](const std::string& p) { return io::read_file(p); });
  const Extension ext = with_file(ext_path, load_extension);
  VerifyReport rep;
  const std::string format = with_file(target_path, [&](const std::string&) { return io::detect_format(text); });
  if (format == "HPOLY") {
    rep = verify_extension(with_file(target_path, [&](const std::string&) { return io::read_hpoly(text); }), ext);
  } else if (format == "VPOLY") {
    rep = verify_extension(with_file(target_path, [&](const std::string&) { return io::read_vpoly(text); }), ext);
  } else {
    throw InputError(target_path + ": expected an HPOLY or VPOLY file");
  }
  Json results = {{"passed", rep.passed},
                  {"target_in_image", rep.target_in_image},
                  {"image_in_target", rep.image_in_target},
                  {"extension", ext.name},
                  {"size", ext.size()},
                  {"vertices_checked", rep.vertices_checked},
                  {"rows_checked", rep.rows_checked},
                  {"detail", rep.detail}};
  Json witness = Json::object();
  if (rep.missing_vertex) witness["missing_vertex"] = to_json(*rep.missing_vertex);
  if (rep.violated_row) witness["violated_row"] = *rep.violated_row;
  if (rep.escape_point) witness["escape_point"] = to_json(*rep.escape_point);
  if (rep.ray) witness["ray"] = to_json(*rep.ray);
  if (!witness.empty()) results["witness"] = witness;
  if (opt.json) {
    out << report("verify", {{"target", target_path}, {"extension", ext_path}}, results, std::nullopt).dump(2) << '\n';
  } else {
    out << (rep.passed ? "PASS" : "FAIL") << ": " << rep.detail << " (" << ext.name << ", size " << ext.size() << ")\n";
    if (rep.missing_vertex) out << "missing vertex: " << to_string(*rep.missing_vertex) << '\n';
    if (rep.escape_point) out << "escape point: " << to_string(*rep.escape_point) << '\n';
    if (rep.ray) out << "ray: " << to_string(*rep.ray) << '\n';
  }
  return rep.passed ? kOk : kVerifiedFalse;
}

// ---- bounds ----------------------------------------------------------------

int cmd_bounds(const std::string& hpath, const std::string& vpath, const std::vector<std::string>& ext_paths,
               std::size_t budget, const Options& opt, std::ostream& out) {
  const HPoly h = with_file(hpath, load_hpoly);
  const VPoly v = with_file(vpath, load_vpoly);
  std::vector<Extension> exts;
  for (const auto& p : ext_paths) exts.push_back(with_file(p, load_extension));
  const BoundReport rep = xc_bounds(h, v, exts, budget);

  Json rects = Json::array();
  for (const auto& r : rep.cover.rectangles) rects.push_back({{"rows", r.rows}, {"cols", r.cols}});
  Json fooling = Json::array();
  for (const auto& [i, j] : rep.fooling.entries) fooling.push_back({i, j});
  Json known = Json::array();
  for (const auto& k : rep.extensions) known.push_back({{"name", k.name}, {"size", k.size}, {"verified", k.verified}});
  Json results = {
      {"lower", rep.lower},
      {"lower_source", rep.lower_source},
      {"upper", rep.upper},
      {"upper_source", rep.upper_source},
      {"rank", rep.rank},
      {"rectangle_cover",
       {{"size", rep.cover.size()}, {"exact", rep.cover.exact}, {"lower_bound", rep.cover.lower_bound}, {"rectangles", rects}}},
      {"fooling_set", {{"size", rep.fooling.size()}, {"exact", rep.fooling.exact}, {"entries", fooling}}},
      {"faces", rep.log_face ? Json(rep.face_count) : Json(nullptr)},
      {"log_faces", rep.log_face ? Json(*rep.log_face) : Json(nullptr)},
      {"extensions", known},
  };
  const bool exact = rep.cover.exact && rep.fooling.exact;
  if (opt.json) {
    Json inputs = {{"hrep", hpath}, {"vrep", vpath}, {"extensions", ext_paths}, {"budget", budget}};
    out << report("bounds", inputs, results, std::nullopt).dump(2) << '\n';
  } else {
    out << "extension complexity in [" << rep.lower << ", " << rep.upper << "]\n";
    out << "  lower: " << rep.lower_source << ", upper: " << rep.upper_source << '\n';
    out << "  rank " << rep.rank << ", rectangle cover " << rep.cover.size() << (rep.cover.exact ? "" : " (budget)")
        << ", fooling set " << rep.fooling.size() << (rep.fooling.exact ? "" : " (budget)");
    if (rep.log_face) out << ", faces " << rep.face_count << " (log bound " << *rep.log_face << ")";
    out << '\n';
  }
  return exact ? kOk : kBudgetExceeded;
}

// ---- slack / factorize -----------------------------------------------------

SlackMatrix file_slack(const SlackMatrix& s) {
  SlackMatrix out = s;
  for (std::size_t j = 0; j < out.col_labels.size(); ++j) out.col_labels[j] = sanitized(out.col_labels[j], j, "x");
  return out;
}

int cmd_slack(const std::string& hpath, const std::string& vpath, const std::string& output, const Options& opt,
              std::ostream& out) {
  const HPoly h = with_file(hpath, load_hpoly);
  const VPoly v = with_file(vpath, load_vpoly);
  const SlackMatrix s = file_slack(slack_matrix(h, v));
  std::size_t zeros = 0;
  for (const auto& row : s.entries) zeros += static_cast<std::size_t>(std::count(row.begin(), row.end(), Rational(0)));
  const std::string text = io::write_slack(s);
  if (!output.empty()) io::write_file(output, text);
  if (opt.json) {
    Json results = {{"rows", s.rows()},
                    {"cols", s.cols()},
                    {"zeros", zeros},
                    {"binding", is_binding(h)},
                    {"entries", to_json(s.entries)}};
    if (!output.empty()) results["file"] = output;
    out << report("slack", {{"hrep", hpath}, {"vrep", vpath}}, results, std::nullopt).dump(2) << '\n';
  } else if (output.empty()) {
    out << text;
  } else {
    out << s.rows() << "x" << s.cols() << " slack matrix, " << zeros << " zeros -> " << output << '\n';
  }
  return kOk;
}

int cmd_factorize(const std::string& ext_path, const std::string& hpath, const std::string& vpath,
                  const std::string& t_path, const std::string& s_path, const Options& opt, std::ostream& out) {
  const Extension ext = with_file(ext_path, load_extension);
  const HPoly h = with_file(hpath, load_hpoly);
  const VPoly v = with_file(vpath, load_vpoly);
  const NonnegFactorization f = extension_to_factorization(ext, h, v);
  const SlackMatrix slack = file_slack(slack_matrix(h, v));
  const FactorizationCheck check = verify_factorization(slack, f);

  std::vector<std::string> q_labels;
  for (std::size_t l = 0; l < ext.q.size(); ++l) q_labels.push_back(sanitized(ext.q.inequalities()[l].label, l, "q"));
  std::vector<std::string> q_row_labels;
  for (std::size_t l = 0; l < ext.q.size(); ++l) {
    const std::string& lab = ext.q.inequalities()[l].label;
    q_row_labels.push_back(lab.empty() ? "q" + std::to_string(l + 1) : lab);
  }
  const std::string t_text = io::write_matrix({f.t, slack.row_labels, q_labels}, f.inner());
  const std::string s_text = io::write_matrix({f.s, q_row_labels, slack.col_labels}, slack.cols());
  if (!t_path.empty()) io::write_file(t_path, t_text);
  if (!s_path.empty()) io::write_file(s_path, s_text);
  if (opt.json) {
    Json results = {{"inner", f.inner()},
                    {"t_shape", {f.t.size(), f.inner()}},
                    {"s_shape", {f.inner(), slack.cols()}},
                    {"verified", check.valid},
                    {"detail", check.detail}};
    if (!t_path.empty()) results["t_file"] = t_path;
    if (!s_path.empty()) results["s_file"] = s_path;
    out << report("factorize", {{"extension", ext_path}, {"hrep", hpath}, {"vrep", vpath}}, results, std::nullopt)
               .dump(2)
        << '\n';
  } else {
    out << "T " << f.t.size() << "x" << f.inner() << ", S " << f.inner() << "x" << slack.cols() << ": "
        << (check.valid ? "T S = slack matrix" : check.detail) << '\n';
    if (t_path.empty()) out << t_text;
    if (s_path.empty()) out << s_text;
  }
  return check.valid ? kOk : kVerifiedFalse;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Extended formulations: exact constructions, verification, and lower bounds", kToolName};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);
  Options opt;
  app.add_flag("--json", opt.json, "Emit a JSON report on stdout");
  std::function<int()> action;

  ZooArgs zoo_args;
  auto* zoo_cmd = app.add_subcommand("zoo", "Write a polytope from the built-in families");
  zoo_cmd->add_option("family", zoo_args.family, "matching, permutahedron, birkhoff, spanning-tree, knapsack, cube, cross, simplex")
      ->required();
  zoo_cmd->add_option("n", zoo_args.n, "Size parameter");
  zoo_cmd->add_option("--ell", zoo_args.ell, "Matching cardinality");
  zoo_cmd->add_option("--w", zoo_args.weights, "Knapsack weights, comma separated")->delimiter(',');
  zoo_cmd->add_option("--W", zoo_args.capacity, "Knapsack capacity");
  zoo_cmd->add_option("--hrep", zoo_args.hrep_file, "Write the inequality description here");
  zoo_cmd->add_option("--vrep", zoo_args.vrep_file, "Write the point list here");
  zoo_cmd->add_flag("--json", opt.json, "Emit a JSON report on stdout");
  zoo_cmd->callback([&] { action = [&] { return cmd_zoo(zoo_args, opt, out); }; });

  ConstructArgs con_args;
  auto* con_cmd = app.add_subcommand("construct", "Build an extended formulation");
  con_cmd->add_option("kind", con_args.kind, "birkhoff, martin, balas, knapsack, sortnet, colorful")->required();
  con_cmd->add_option("n", con_args.n, "Size parameter");
  con_cmd->add_option("k", con_args.k, "Matching cardinality (colorful)");
  con_cmd->add_option("--w", con_args.weights, "Knapsack weights, comma separated")->delimiter(',');
  con_cmd->add_option("--W", con_args.capacity, "Knapsack capacity");
  con_cmd->add_option("--network", con_args.network, "bubble or batcher (sortnet)");
  con_cmd->add_option("--part", con_args.parts, "Part polytope file, .hpoly or .vpoly (balas, repeatable)");
  con_cmd->add_option("-o,--output", con_args.output, "Write the extension here");
  con_cmd->add_flag("--json", opt.json, "Emit a JSON report on stdout");
  con_cmd->callback([&] { action = [&] { return cmd_construct(con_args, opt, out); }; });

  std::string target_path;
  std::string ext_path;
  auto* ver_cmd = app.add_subcommand("verify", "Check P = p(Q) exactly");
  ver_cmd->add_option("target", target_path, "Target polytope, .hpoly or .vpoly")->required();
  ver_cmd->add_option("extension", ext_path, "Extension file")->required();
  ver_cmd->add_flag("--json", opt.json, "Emit a JSON report on stdout");
  ver_cmd->callback([&] { action = [&] { return cmd_verify(target_path, ext_path, opt, out); }; });

  std::string hpath;
  std::string vpath;
  std::vector<std::string> ext_paths;
  std::size_t budget = kDefaultSearchBudget;
  auto* bnd_cmd = app.add_subcommand("bounds", "Lower and upper bounds on extension complexity");
  bnd_cmd->add_option("hrep", hpath, "Inequality description")->required();
  bnd_cmd->add_option("vrep", vpath, "Vertex list")->required();
  bnd_cmd->add_option("--ext", ext_paths, "Known extension file (repeatable)");
  bnd_cmd->add_option("--budget", budget, "Search node budget for exact covers and fooling sets");
  bnd_cmd->add_flag("--json", opt.json, "Emit a JSON report on stdout");
  bnd_cmd->callback([&] { action = [&] { return cmd_bounds(hpath, vpath, ext_paths, budget, opt, out); }; });

  std::string slack_out;
  auto* slk_cmd = app.add_subcommand("slack", "Slack matrix of a description against a point list");
  slk_cmd->add_option("hrep", hpath, "Inequality description")->required();
  slk_cmd->add_option("vrep", vpath, "Point list")->required();
  slk_cmd->add_option("-o,--output", slack_out, "Write the matrix here");
  slk_cmd->add_flag("--json", opt.json, "Emit a JSON report on stdout");
  slk_cmd->callback([&] { action = [&] { return cmd_slack(hpath, vpath, slack_out, opt, out); }; });

  std::string fext_path;
  std::string t_path;
  std::string s_path;
  auto* fac_cmd = app.add_subcommand("factorize", "Nonnegative factorization of the slack matrix from an extension");
  fac_cmd->add_option("extension", fext_path, "Extension file")->required();
  fac_cmd->add_option("hrep", hpath, "Binding inequality description")->required();
  fac_cmd->add_option("vrep", vpath, "Vertex list")->required();
  fac_cmd->add_option("--t", t_path, "Write T here");
  fac_cmd->add_option("--s", s_path, "Write S here");
  fac_cmd->add_flag("--json", opt.json, "Emit a JSON report on stdout");
  fac_cmd->callback([&] { action = [&] { return cmd_factorize(fext_path, hpath, vpath, t_path, s_path, opt, out); }; });

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInputError;
  }

  try {
    return action();
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return kVerifiedFalse;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  }
}

}  // namespace extform::cli
