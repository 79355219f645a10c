#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <ctime>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "padicslopes/bounds.hpp"
#include "padicslopes/harness.hpp"
#include "padicslopes/matrix.hpp"
#include "padicslopes/newton.hpp"
#include "padicslopes/rational.hpp"
#include "svg.hpp"

namespace ps = padicslopes;
using json = nlohmann::ordered_json;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitPropertyFailure = 1;
constexpr int kExitUsage = 2;

struct CommonArgs {
  long p = 3;
  std::string shape_csv;
  long d = 0;
  long h = 1;
  long n = 0;
  long t = 0;
  std::string out;
  std::string format = "text";
};

void add_shape_flags(CLI::App* cmd, CommonArgs& args) {
  cmd->set_help_flag("--help", "print help");  // frees -h; --h is the multiplier
  cmd->add_option("--p", args.p, "prime");
  cmd->add_option("--shape", args.shape_csv, "comma-separated exponent list a_1,a_2,...");
  cmd->add_option("--d", args.d, "tensor arity of the profile");
  cmd->add_option("--h", args.h, "profile multiplier (class number / generator count)");
  cmd->add_option("--n", args.n, "filtration depth");
  cmd->add_option("--t", args.t, "ambient rank (pads the shape with zeros)");
}

void add_output_flags(CLI::App* cmd, CommonArgs& args) {
  cmd->add_option("--out", args.out, "output path (default: stdout)");
  cmd->add_option("--format", args.format, "text|json|csv|svg")
      ->check(CLI::IsMember({"text", "json", "csv", "svg"}));
}

std::vector<long> parse_csv_longs(const std::string& csv) {
  std::vector<long> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    size_t pos = 0;
    long v = std::stol(item, &pos);
    if (pos != item.size()) throw std::invalid_argument("malformed integer list: " + csv);
    out.push_back(v);
  }
  if (out.empty()) throw std::invalid_argument("empty shape list");
  return out;
}

ps::QuotientShape resolve_shape(const CommonArgs& args) {
  if (!args.shape_csv.empty()) {
    std::vector<long> a = parse_csv_longs(args.shape_csv);
    long n = args.n > 0 ? args.n : *std::max_element(a.begin(), a.end());
    if (args.t > static_cast<long>(a.size())) a.resize(static_cast<size_t>(args.t), 0);
    return ps::QuotientShape(n, std::move(a));
  }
  if (args.d >= 1 && args.n >= 1) {
    ps::SigmaProfile prof = ps::sigma_profile(args.d, args.h, args.n);
    long t = args.t > 0 ? args.t : prof.total();
    return ps::shape_from_profile(prof, t);
  }
  throw std::invalid_argument("need either --shape or --d/--h/--n");
}

std::string iso_utc_now() {
  std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
  return buf;
}

void emit(const CommonArgs& args, const std::string& content) {
  if (args.out.empty()) {
    std::cout << content;
    return;
  }
  std::ofstream os(args.out, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open output file: " + args.out);
  os << content;
}

// The single timestamped line allowed in any output.
std::string header_line(double elapsed_ms) {
  std::ostringstream os;
  os << "# generated=" << iso_utc_now() << " elapsed_ms=" << elapsed_ms << "\n";
  return os.str();
}

std::string slope_summary(const ps::SlopeCount& counts) {
  std::ostringstream os;
  bool first = true;
  for (const auto& [slope, mult] : counts) {
    if (!first) os << ' ';
    os << ps::rational_pretty(slope) << ':' << mult;
    first = false;
  }
  return os.str();
}

int cmd_polygon(const CommonArgs& args, const std::string& in_path) {
  std::ifstream is(in_path);
  if (!is) throw std::runtime_error("cannot open matrix file: " + in_path);
  ps::IntegerMatrix m = ps::read_matrix(is);
  ps::Prime p(args.p);
  ps::CharPolyCoeffs cp = ps::char_poly(m);
  ps::NewtonPolygon np = ps::newton_polygon(cp, p);
  ps::SlopeCount counts = ps::slope_multiplicities(np);

  if (args.format == "csv") {
    emit(args, ps::points_csv(np));
    if (!args.out.empty()) {
      std::ofstream vs(args.out + ".vertices.csv", std::ios::binary);
      vs << ps::vertices_csv(np);
    }
    return kExitPass;
  }
  if (args.format == "svg") {
    ps::QuotientShape shape = resolve_shape(args);
    emit(args, ps::cli::svg_plot(np, ps::B_function(shape), ps::T_function(shape)));
    return kExitPass;
  }
  if (args.format == "json") {
    json body;
    body["config"] = {{"command", "polygon"}, {"in", in_path}, {"p", args.p}};
    body["degree"] = np.degree;
    body["kernel_multiplicity"] = np.kernel_multiplicity;
    json pts = json::array(), verts = json::array(), slopes = json::array();
    for (const auto& pt : np.points) pts.push_back({pt.index, pt.valuation});
    for (const auto& v : np.vertices) verts.push_back({v.index, v.valuation});
    for (const auto& [slope, mult] : counts) slopes.push_back({ps::rational_str(slope), mult});
    body["points"] = pts;
    body["vertices"] = verts;
    body["slopes"] = slopes;
    emit(args, body.dump(2) + "\n");
    return kExitPass;
  }

  std::ostringstream os;
  os << "config: polygon --in " << in_path << " --p " << args.p << "\n";
  os << "degree: " << np.degree << "\n";
  os << "vertices:";
  for (const auto& v : np.vertices) os << " (" << v.index << "," << v.valuation << ")";
  os << "\nslopes: " << slope_summary(counts) << "\n";
  os << "kernel_multiplicity: " << np.kernel_multiplicity << "\n";
  emit(args, os.str());
  return kExitPass;
}

int cmd_verify(const CommonArgs& args, const std::string& kind_name, long trials, std::uint64_t seed,
               long entry_bound, long t_prime_flag) {
  ps::CampaignKind kind;
  if (kind_name == "divisibility")
    kind = ps::CampaignKind::divisibility;
  else if (kind_name == "congruence")
    kind = ps::CampaignKind::congruence;
  else if (kind_name == "slopes")
    kind = ps::CampaignKind::slopes;
  else if (kind_name == "layers")
    kind = ps::CampaignKind::layers;
  else
    throw std::invalid_argument("unknown verify kind: " + kind_name);

  ps::QuotientShape shape = resolve_shape(args);
  ps::CampaignConfig config{shape, ps::Prime(args.p), seed, trials, entry_bound,
                            t_prime_flag > 0 ? std::optional<long>(t_prime_flag) : std::nullopt};
  ps::VerificationReport rep = ps::run_campaign(kind, config);

  std::string body = ps::report_body_json(rep);
  if (args.format == "json" || !args.out.empty()) {
    std::string text = header_line(rep.elapsed_ms) + body;
    emit(args, text);
    if (!args.out.empty() && args.format == "text")
      std::cout << (rep.passed() ? "PASS" : "FAIL") << " " << kind_name << ": " << rep.trials_run
                << " trials, " << rep.failures.size() << " failures\n";
  } else {
    std::cout << header_line(rep.elapsed_ms);
    std::cout << "config: verify " << kind_name << " --p " << args.p << " --trials " << trials << " --seed "
              << seed << "\n";
    std::cout << "trials_run: " << rep.trials_run << "\nfailures: " << rep.failures.size() << "\n";
    for (const auto& f : rep.failures)
      std::cout << "  trial " << f.trial << " at " << f.where << ": observed " << f.observed << ", required "
                << f.required << "\n";
    if (rep.kind == "slopes")
      std::cout << "critical_slope: " << rep.critical_slope << "\nmatched_segments: " << rep.matched_segments
                << "\nunconstrained_diffs: " << rep.unconstrained_diffs << "\n";
    std::cout << "result: " << (rep.passed() ? "PASS" : "FAIL") << "\n";
  }
  return rep.passed() ? kExitPass : kExitPropertyFailure;
}

int cmd_bounds(const CommonArgs& args, const std::string& alpha_str, long m, bool iq) {
  std::ostringstream os;
  json body;
  bool have_profile = args.d >= 1 && args.n >= 1;
  bool have_shape = have_profile || !args.shape_csv.empty();
  std::optional<mpq_class> alpha;
  if (!alpha_str.empty()) alpha = ps::parse_rational(alpha_str);

  if (!have_shape && !alpha && !iq) throw std::invalid_argument("nothing to compute: pass --d/--h/--n, --shape, --alpha or --iq");

  if (have_shape) {
    ps::QuotientShape shape = resolve_shape(args);
    ps::PiecewiseBound b = ps::B_function(shape);
    ps::PiecewiseBound t = ps::T_function(shape);
    mpq_class c = ps::critical_slope_c(shape);
    if (have_profile) {
      ps::SigmaProfile prof = ps::sigma_profile(args.d, args.h, args.n);
      os << "sigma:";
      for (long s : prof.sigma) os << ' ' << s;
      os << "\n";
      body["sigma"] = prof.sigma;
      ps::ClosedFormC cf = ps::closed_form_c(args.d, args.h, args.n);
      std::ostringstream cfo;
      cfo << "c1=" << cf.c1 << " c1_term=" << cf.c1_term << " n=" << cf.n_cap << " value=" << cf.value
          << " stationary_x=" << cf.stationary_x;
      os << "closed_form: " << cfo.str() << "\n";
      body["closed_form"] = {{"c1", cf.c1},
                             {"c1_term", cf.c1_term},
                             {"n", cf.n_cap},
                             {"value", cf.value},
                             {"stationary_x", cf.stationary_x}};
    }
    os << "B:\n" << ps::bound_to_text(b);
    os << "T:\n" << ps::bound_to_text(t);
    os << "c: " << ps::rational_str(c) << "\n";
    body["B"] = ps::bound_to_text(b);
    body["T"] = ps::bound_to_text(t);
    body["c"] = ps::rational_str(c);
  }

  if (alpha && args.d >= 1 && !iq) {
    long na = ps::n_alpha(*alpha, args.d, args.h);
    os << "n_alpha: " << na << "\n";
    body["n_alpha"] = na;
  }

  if (iq) {
    if (m < 1 || !alpha) throw std::invalid_argument("--iq needs --m and --alpha");
    mpz_class paper = ps::iq_bound_paper(m, *alpha);
    mpq_class chord = ps::max_chord_quadratic(m, *alpha);
    os << "iq_bound_paper: " << paper.get_str() << "\n";
    os << "max_chord: " << ps::rational_str(chord) << "\n";
    body["iq_bound_paper"] = paper.get_str();
    body["max_chord"] = ps::rational_str(chord);
    if (mpq_class(paper) < chord) {
      os << "finding: exact chord bound " << ps::rational_str(chord)
         << " exceeds the quadratic closed form " << paper.get_str() << "\n";
      body["findings"] = {"exact chord bound exceeds the quadratic closed form"};
    }
  }

  emit(args, args.format == "json" ? body.dump(2) + "\n" : os.str());
  return kExitPass;
}

int cmd_shape(const CommonArgs& args, const std::string& in_path) {
  ps::Prime p(args.p);
  std::optional<ps::QuotientShape> shape;
  if (!in_path.empty()) {
    if (args.n < 0) throw std::invalid_argument("--n required with --in");
    std::ifstream is(in_path);
    if (!is) throw std::runtime_error("cannot open matrix file: " + in_path);
    shape = ps::quotient_shape(ps::read_matrix(is), p, args.n);
  } else {
    shape = resolve_shape(args);
  }
  std::vector<long> layers = ps::layer_sizes(*shape);
  if (args.format == "json") {
    json body;
    body["n"] = shape->n;
    body["t"] = shape->t;
    body["a"] = shape->a;
    body["layers"] = layers;
    emit(args, body.dump(2) + "\n");
  } else {
    std::ostringstream os;
    os << "n: " << shape->n << "\nt: " << shape->t << "\na:";
    for (long x : shape->a) os << ' ' << x;
    os << "\nlayers:";
    for (long x : layers) os << ' ' << x;
    os << "\n";
    emit(args, os.str());
  }
  return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact p-adic Newton polygons, slope bounds, and verification campaigns"};
  app.require_subcommand(1);

  CommonArgs polygon_args;
  std::string polygon_in;
  CLI::App* polygon = app.add_subcommand("polygon", "Newton polygon of a matrix file");
  polygon->add_option("--in", polygon_in, "matrix file")->required();
  add_shape_flags(polygon, polygon_args);
  add_output_flags(polygon, polygon_args);

  CommonArgs verify_args;
  std::string verify_kind;
  long trials = 100, entry_bound = 0, t_prime = 0;
  std::uint64_t seed = 0;
  CLI::App* verify = app.add_subcommand("verify", "run a verification campaign");
  verify->add_option("kind", verify_kind, "divisibility|congruence|slopes|layers")->required();
  add_shape_flags(verify, verify_args);
  verify->add_option("--trials", trials, "number of trials");
  verify->add_option("--seed", seed, "campaign seed");
  verify->add_option("--entry-bound", entry_bound, "entries drawn from [0, p^E); default n + 2");
  verify->add_option("--t-prime", t_prime, "smaller rank for the perturbed matrix");
  add_output_flags(verify, verify_args);

  CommonArgs bounds_args;
  std::string alpha_str;
  long m = 0;
  bool iq = false;
  CLI::App* bounds = app.add_subcommand("bounds", "sigma profile, B/T tables, critical slope");
  add_shape_flags(bounds, bounds_args);
  bounds->add_option("--alpha", alpha_str, "slope, as n or num/den");
  bounds->add_option("--m", m, "generator count for the quadratic lower-bound profile");
  bounds->add_flag("--iq", iq, "compare the closed-form bound with the exact chord bound");
  add_output_flags(bounds, bounds_args);

  CommonArgs shape_args;
  std::string shape_in;
  CLI::App* shapecmd = app.add_subcommand("shape", "quotient shape of a matrix file or profile");
  shapecmd->add_option("--in", shape_in, "matrix file whose columns span the sublattice");
  add_shape_flags(shapecmd, shape_args);
  add_output_flags(shapecmd, shape_args);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitPass : kExitUsage;
  }

  try {
    if (polygon->parsed()) return cmd_polygon(polygon_args, polygon_in);
    if (verify->parsed()) return cmd_verify(verify_args, verify_kind, trials, seed, entry_bound, t_prime);
    if (bounds->parsed()) return cmd_bounds(bounds_args, alpha_str, m, iq);
    if (shapecmd->parsed()) return cmd_shape(shape_args, shape_in);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
