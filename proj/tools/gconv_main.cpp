#include <gconv/gconv.h>

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <sstream>

using json = nlohmann::json;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

json read_json(const std::string& path) {
  std::stringstream buf;
  if (path == "-") {
    buf << std::cin.rdbuf();
  } else {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open " + path);
    buf << in.rdbuf();
  }
  try {
    return json::parse(buf.str());
  } catch (const json::exception& e) {
    throw UsageError(path + ": " + e.what());
  }
}

struct Output {
  bool as_json = false;
  std::string out_file;
};

int run(const std::string& command, const json& request, const Output& o) {
  char* report = nullptr;
  int pass = 0;
  const gconv_status st = gconv_run(command.c_str(), request.dump().c_str(), &report, &pass);
  if (st != GCONV_OK) {
    std::cerr << "gconv " << command << ": " << gconv_status_name(st) << ": " << gconv_last_error() << '\n';
    return st == GCONV_E_NUMERICAL || st == GCONV_E_INTERNAL ? 1 : 2;
  }
  const std::string text(report);
  if (!o.out_file.empty()) {
    auto j = json::parse(text);
    std::ofstream out(o.out_file);
    if (!out) {
      gconv_string_free(report);
      throw UsageError("cannot write " + o.out_file);
    }
    out << j.value("result", json()).dump(2) << '\n';
  }
  if (o.as_json) {
    std::cout << text << '\n';
  } else {
    char* table = nullptr;
    if (gconv_report_table(report, &table) == GCONV_OK) {
      std::cout << table;
      gconv_string_free(table);
    }
  }
  gconv_string_free(report);
  return pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Convolution and Fourier analysis on finite groups and their quotient spaces"};
  app.set_help_flag("--help", "Print this help message and exit");
  app.require_subcommand(1);
  app.set_version_flag("--version", gconv_version());

  Output out;
  std::string command;
  json req = json::object();
  auto common = [&](CLI::App* sub) {
    sub->add_flag("--json", out.as_json, "Print the JSON report");
    sub->add_option("--out", out.out_file, "Write the result payload as JSON");
  };
  double tol = 0;
  std::uint64_t seed = 0;
  std::string group, h, k, f_path, g_path;

  // group
  auto* grp = app.add_subcommand("group", "Group structure and coset spaces");
  grp->require_subcommand(1);
  auto* ginfo = grp->add_subcommand("info", "Order, labels and generators");
  bool table = false;
  ginfo->add_option("spec", group, "Z<n>, D<n>, S<n> or products like Z4xZ4")->required();
  ginfo->add_flag("--table", table, "Include the Cayley table");
  common(ginfo);
  ginfo->callback([&] {
    command = "group";
    req = {{"action", "info"}, {"group", group}, {"table", table}};
  });
  auto* gcos = grp->add_subcommand("cosets", "List the points of a quotient space");
  std::string kind = "LEFT";
  gcos->add_option("spec", group)->required();
  gcos->add_option("--kind", kind, "GROUP, LEFT, RIGHT or DOUBLE")->capture_default_str();
  gcos->add_option("--h", h, "Generators of H, space separated");
  gcos->add_option("--k", k, "Generators of K (DOUBLE only)");
  common(gcos);
  gcos->callback([&] {
    command = "group";
    json q{{"kind", kind}, {"H", h}};
    if (gcos->count("--k")) q["K"] = k;
    req = {{"action", "cosets"}, {"group", group}, {"quotient", q}};
  });

  // irreps
  auto* irr = app.add_subcommand("irreps", "Irreducible representations and their checks");
  bool matrices = false;
  irr->add_option("spec", group)->required();
  irr->add_flag("--matrices", matrices, "Include every representation matrix");
  irr->add_option("--tol", tol, "Residual threshold");
  common(irr);
  irr->callback([&] {
    command = "irreps";
    req = {{"group", group}, {"matrices", matrices}};
    if (tol > 0) req["tol"] = tol;
  });

  // fourier
  auto* fou = app.add_subcommand("fourier", "Fourier transform of a function");
  bool adapted = false;
  fou->add_option("--f", f_path, "Function JSON, - for stdin")->required();
  fou->add_flag("--adapted", adapted, "Express components in the subgroup-adapted basis");
  fou->add_option("--tol", tol);
  common(fou);
  fou->callback([&] {
    command = "fourier";
    req = {{"f", read_json(f_path)}, {"adapted", adapted}};
    if (tol > 0) req["tol"] = tol;
  });

  // convolve
  auto* conv = app.add_subcommand("convolve", "Convolve two functions");
  std::string conv_case = "def4", mode;
  bool via = false;
  conv->add_option("--case", conv_case, "def4, 1, 2 or 3")->capture_default_str();
  conv->add_option("--group", group, "Group the inputs must live on");
  conv->add_option("--h", h, "Expected H, space separated generators");
  conv->add_option("--k", k, "Expected K (case 3)");
  conv->add_option("--f", f_path)->required();
  conv->add_option("--g", g_path, "Second function or filter")->required();
  conv->add_option("--mode", mode, "scalar, dot, matvec or reverse");
  conv->add_flag("--via-fourier", via, "Report the Fourier-product result");
  conv->add_option("--tol", tol);
  common(conv);
  conv->callback([&] {
    command = "convolve";
    req = {{"case", conv_case}, {"f", read_json(f_path)}, {"g", read_json(g_path)}, {"via_fourier", via}};
    if (!group.empty()) req["group"] = group;
    if (conv->count("--h")) req["h"] = h;
    if (conv->count("--k")) req["k"] = k;
    if (!mode.empty()) req["mode"] = mode;
    if (tol > 0) req["tol"] = tol;
  });

  // solve-basis
  auto* sb = app.add_subcommand("solve-basis", "Basis of equivariant maps G/H -> G/K");
  bool all_elements = false;
  sb->add_option("--group", group)->required();
  sb->add_option("--h", h, "Input subgroup H");
  sb->add_option("--k", k, "Output subgroup K");
  sb->add_flag("--all-elements", all_elements, "Constrain every element, not only generators");
  sb->add_option("--tol", tol);
  common(sb);
  sb->callback([&] {
    command = "solve-basis";
    req = {{"group", group}, {"h", h}, {"k", k}, {"all_elements", all_elements}};
    if (tol > 0) req["tol"] = tol;
  });

  // net
  auto* net = app.add_subcommand("net", "Feed-forward networks over quotient spaces");
  net->require_subcommand(1);
  std::string spec_path, input_path, nonlin = "RELU_RE_IM";
  std::vector<std::string> chain;
  std::vector<std::size_t> channels;
  bool all_layers = false;
  auto net_run = [&](const char* name, const char* help) {
    auto* s = net->add_subcommand(name, help);
    s->add_option("--spec", spec_path, "Network JSON")->required();
    s->add_option("--input", input_path, "Input function JSON; seeded Gaussian if omitted");
    s->add_option("--seed", seed);
    s->add_option("--tol", tol);
    s->add_flag("--all-layers", all_layers, "Include every activation in the result");
    s->add_flag("--all-elements", all_elements, "Check every group element");
    common(s);
    s->callback([&, name] {
      command = "net";
      req = {{"action", name},         {"spec", read_json(spec_path)},   {"seed", seed},
             {"all_layers", all_layers}, {"all_elements", all_elements}};
      if (!input_path.empty()) req["input"] = read_json(input_path);
      if (tol > 0) req["tol"] = tol;
    });
  };
  net_run("run", "Forward pass with an equivariance check");
  net_run("check", "Equivariance check only");
  auto* nr = net->add_subcommand("random", "Seeded random network over a subgroup chain");
  nr->add_option("--group", group)->required();
  nr->add_option("--chain", chain, "Subgroups H_0 H_1 ..., each a quoted list of generators, \"\" for {e}")->required();
  nr->add_option("--channels", channels, "Channels per space")->delimiter(',');
  nr->add_option("--nonlinearity", nonlin, "NONE, RELU_RE_IM or MODULUS_RELU")->capture_default_str();
  nr->add_option("--seed", seed);
  common(nr);
  nr->callback([&] {
    command = "net";
    req = {{"action", "random"}, {"group", group}, {"chain", chain}, {"nonlinearity", nonlin}, {"seed", seed}};
    if (!channels.empty()) req["channels"] = channels;
  });

  // demo
  auto* demo = app.add_subcommand("demo", "Worked examples");
  demo->require_subcommand(1);
  auto* mpnn = demo->add_subcommand("mpnn", "Message passing chain over S_n");
  int n = 4, layers = 2;
  mpnn->add_option("--n", n)->capture_default_str();
  mpnn->add_option("--layers", layers)->capture_default_str();
  mpnn->add_option("--seed", seed);
  mpnn->add_option("--tol", tol);
  common(mpnn);
  mpnn->callback([&] {
    command = "demo";
    req = {{"name", "mpnn"}, {"n", n}, {"layers", layers}, {"seed", seed}};
    if (tol > 0) req["tol"] = tol;
  });

  // verify
  auto* ver = app.add_subcommand("verify", "Run the verification suites");
  std::string suite = "all";
  bool slow = false, timing = false;
  ver->add_option("--suite", suite,
                  "irreps, fourier, convolution, sparsity, network, equivariance, lemmas, mpnn, representatives or all")
      ->capture_default_str();
  ver->add_option("--tol", tol, "Replace every numeric threshold");
  ver->add_option("--seed", seed);
  ver->add_flag("--slow", slow, "Add S5 to the group matrix");
  ver->add_flag("--timing", timing, "Record wall times");
  common(ver);
  ver->callback([&] {
    command = "verify";
    req = {{"suite", suite}, {"seed", seed}, {"slow", slow}, {"timing", timing}};
    if (tol > 0) req["tol"] = tol;
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  } catch (const UsageError& e) {
    std::cerr << "gconv: " << e.what() << '\n';
    return 2;
  }
  try {
    return run(command, req, out);
  } catch (const UsageError& e) {
    std::cerr << "gconv: " << e.what() << '\n';
    return 2;
  }
}
