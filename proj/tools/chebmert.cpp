#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <sstream>

#include "chebmert/constants.hpp"
#include "chebmert/errors.hpp"
#include "chebmert/ledger.hpp"
#include "chebmert/numeric.hpp"
#include "chebmert/verify.hpp"

namespace {

using namespace chebmert;
using nlohmann::json;

struct CommonOpts {
  long long quadratic = 0;
  bool have_quadratic = false;
  long long cyclotomic = 0;
  bool have_cyclotomic = false;
  std::string cubic;
  std::string klass;
  bool all_classes = false;
  double xmax = 1e6;
  std::string checkpoints;
  int threads = 4;
  std::string cache;
  std::string format = "csv";
  std::string out;
  std::string config;
  bool debug = false;
};

// Flat key=value config file; values apply only where no flag was given
// (precedence: flags > config file > defaults).
void apply_config(const CLI::App* cmd, CommonOpts& o, std::string* suite,
                  long long* rosen_d, std::string* form_spec) {
  if (o.config.empty()) return;
  std::ifstream is(o.config);
  if (!is.good()) throw UsageError("cannot open config file: " + o.config);
  auto given = [&](const std::string& flag) {
    const CLI::Option* opt = cmd->get_option_no_throw(flag);
    return opt != nullptr && opt->count() > 0;
  };
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    auto first = line.find_first_not_of(" \t");
    if (first == std::string::npos || line[first] == '#') continue;
    auto eq = line.find('=');
    if (eq == std::string::npos)
      throw UsageError(o.config + ":" + std::to_string(lineno) +
                       ": expected key=value");
    auto strip = [](std::string s) {
      auto b = s.find_first_not_of(" \t");
      auto e = s.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    std::string key = strip(line.substr(0, eq));
    std::string value = strip(line.substr(eq + 1));
    try {
      if (key == "xmax") {
        if (!given("--xmax")) o.xmax = std::stod(value);
      } else if (key == "checkpoints") {
        if (!given("--checkpoints")) o.checkpoints = value;
      } else if (key == "threads") {
        if (!given("--threads")) o.threads = std::stoi(value);
      } else if (key == "cache") {
        if (!given("--cache")) o.cache = value;
      } else if (key == "format") {
        if (value != "csv" && value != "json")
          throw UsageError("config format must be csv or json");
        if (!given("--format")) o.format = value;
      } else if (key == "out") {
        if (!given("--out")) o.out = value;
      } else if (key == "debug") {
        if (!given("--debug")) o.debug = value == "1" || value == "true";
      } else if (key == "quadratic") {
        if (!o.have_quadratic && !o.have_cyclotomic && o.cubic.empty()) {
          o.quadratic = std::stoll(value);
          o.have_quadratic = true;
        }
      } else if (key == "cyclotomic") {
        if (!o.have_quadratic && !o.have_cyclotomic && o.cubic.empty()) {
          o.cyclotomic = std::stoll(value);
          o.have_cyclotomic = true;
        }
      } else if (key == "cubic") {
        if (!o.have_quadratic && !o.have_cyclotomic && o.cubic.empty())
          o.cubic = value;
      } else if (key == "class") {
        if (!given("--class")) o.klass = value;
      } else if (key == "all-classes") {
        if (!given("--all-classes")) o.all_classes = value == "1" || value == "true";
      } else if (key == "suite") {
        if (suite && !given("--suite")) *suite = value;
      } else if (key == "discriminant" || key == "D") {
        if (rosen_d && !given("--discriminant")) *rosen_d = std::stoll(value);
      } else if (key == "form") {
        if (form_spec && !given("--form")) *form_spec = value;
      } else {
        throw UsageError("unknown config key '" + key + "'");
      }
    } catch (const UsageError&) {
      throw;
    } catch (const std::exception&) {
      throw UsageError(o.config + ":" + std::to_string(lineno) +
                       ": bad value for " + key);
    }
  }
}

void add_model_flags(CLI::App* cmd, CommonOpts& o) {
  auto* q = cmd->add_option("--quadratic", o.quadratic,
                            "quadratic model Q(sqrt(D)), squarefree D");
  auto* c = cmd->add_option("--cyclotomic", o.cyclotomic,
                            "cyclotomic model Q(zeta_b), b >= 3");
  auto* s = cmd->add_option("--cubic", o.cubic,
                            "S3 model from a monic cubic, leading coefficient first"
                            " (e.g. 1,0,-1,-1 for x^3-x-1)");
  q->excludes(c)->excludes(s);
  c->excludes(s);
  cmd->callback([&o, q, c] {
    o.have_quadratic = q->count() > 0;
    o.have_cyclotomic = c->count() > 0;
  });
}

void add_run_flags(CLI::App* cmd, CommonOpts& o) {
  cmd->add_option("--config", o.config, "flat key=value config file");
  cmd->add_option("--xmax", o.xmax, "largest prime (norm) included");
  cmd->add_option("--checkpoints", o.checkpoints,
                  "geometric:start,stop,step (x values; step in decades)");
  cmd->add_option("--threads", o.threads, "worker threads");
  cmd->add_option("--cache", o.cache, "classification cache file");
  cmd->add_option("--format", o.format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("--out", o.out, "output path (default stdout)");
  cmd->add_flag("--debug", o.debug, "include log-space internals in output");
}

ExtensionModel model_from(const CommonOpts& o) {
  if (o.have_quadratic) return ExtensionModel::quadratic(o.quadratic);
  if (o.have_cyclotomic) return ExtensionModel::cyclotomic(o.cyclotomic);
  if (!o.cubic.empty())
    return ExtensionModel::s3_cubic(IntPolynomial::parse_leading_first(o.cubic));
  throw UsageError("no model given: use --quadratic, --cyclotomic, or --cubic");
}

uint64_t xmax_from(const CommonOpts& o) {
  if (o.xmax < 2) throw UsageError("--xmax must be at least 2");
  return static_cast<uint64_t>(std::llround(o.xmax));
}

std::vector<uint64_t> checkpoints_from(const CommonOpts& o, uint64_t xmax) {
  if (o.checkpoints.empty()) return default_checkpoints(xmax);
  const std::string prefix = "geometric:";
  if (o.checkpoints.rfind(prefix, 0) != 0)
    throw UsageError("--checkpoints must look like geometric:start,stop,step");
  std::istringstream is(o.checkpoints.substr(prefix.size()));
  double start, stop, step;
  char c1, c2;
  if (!(is >> start >> c1 >> stop >> c2 >> step) || c1 != ',' || c2 != ',')
    throw UsageError("bad checkpoint spec '" + o.checkpoints + "'");
  if (start < 2 || stop < start || step <= 0)
    throw UsageError("checkpoint grid must satisfy 2 <= start <= stop, step > 0");
  return geometric_checkpoints(std::log10(start), std::log10(stop), step, xmax);
}

std::string resolve_cache(const std::string& cache) {
  if (cache.empty()) return cache;
  if (cache.find('/') != std::string::npos) return cache;
  const char* dir = std::getenv("CHEBMERT_CACHE_DIR");
  if (dir && *dir) return std::string(dir) + "/" + cache;
  return cache;
}

void emit(const CommonOpts& o, const std::string& text) {
  if (o.out.empty()) {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << "\n";
    return;
  }
  std::ofstream os(o.out, std::ios::binary | std::ios::trunc);
  if (!os.good()) throw ResourceError("cannot write output file: " + o.out);
  os << text;
}

std::vector<int> target_classes(const ExtensionModel& model, const CommonOpts& o) {
  if (o.all_classes) {
    std::vector<int> all(model.classes().size());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = static_cast<int>(i);
    return all;
  }
  if (o.klass.empty())
    throw UsageError("give --class LABEL or --all-classes");
  std::string label = o.klass;
  if (model.kind() == ModelKind::kCyclotomic &&
      label.find(' ') == std::string::npos)
    label += " mod " + std::to_string(model.cyclotomic_modulus());
  int idx = model.class_index(label);
  if (idx < 0) throw UsageError("unknown class '" + o.klass + "' for model " +
                                model.description());
  return {idx};
}

ProductLedger run_from(const CommonOpts& o, const ExtensionModel& model) {
  CharacterTable table = CharacterTable::for_model(model);
  RunOptions opt;
  opt.x_max = xmax_from(o);
  opt.checkpoints = checkpoints_from(o, opt.x_max);
  opt.threads = o.threads;
  opt.cache_path = resolve_cache(o.cache);
  return run_products(model, table, opt);
}

json snapshot_json(const ProductLedger& ledger, const LedgerSnapshot& s,
                   bool debug) {
  json j;
  j["x"] = s.x;
  j["classes"] = json::array();
  const auto& classes = ledger.table().classes();
  for (std::size_t c = 0; c < classes.size(); ++c) {
    json jc = {{"label", classes[c].label},
               {"count", s.class_counts[c]},
               {"product", round_sig15(std::exp(s.class_log_mertens[c]))}};
    if (debug) jc["log_product"] = s.class_log_mertens[c];
    j["classes"].push_back(jc);
  }
  j["ramified_count"] = s.ramified_count;
  j["mertens_all"] = round_sig15(std::exp(s.log_mertens_all));
  if (debug) {
    j["chars"] = json::array();
    for (std::size_t ci = 0; ci < ledger.table().num_chars(); ++ci) {
      j["chars"].push_back(
          {{"label", ledger.table().chars()[ci].label()},
           {"log_M_inv", {s.log_m_inv[ci].real(), s.log_m_inv[ci].imag()}},
           {"log_K", {s.log_k[ci].real(), s.log_k[ci].imag()}},
           {"log_R_inv", {s.log_r_inv[ci].real(), s.log_r_inv[ci].imag()}},
           {"log_raw", {s.log_raw[ci].real(), s.log_raw[ci].imag()}}});
    }
  }
  return j;
}

int cmd_product(const CommonOpts& o) {
  ExtensionModel model = model_from(o);
  ProductLedger ledger = run_from(o, model);
  if (o.format == "csv") {
    std::ostringstream os;
    write_checkpoint_csv(ledger, os);
    emit(o, os.str());
  } else {
    json j;
    j["model"] = model.description();
    j["x_max"] = ledger.x_max();
    j["checkpoints"] = json::array();
    for (const auto& s : ledger.snapshots())
      j["checkpoints"].push_back(snapshot_json(ledger, s, o.debug));
    emit(o, j.dump(2) + "\n");
  }
  return 0;
}

int cmd_constant(const CommonOpts& o) {
  ExtensionModel model = model_from(o);
  std::vector<int> targets = target_classes(model, o);
  ProductLedger ledger = run_from(o, model);
  std::ostringstream os;
  if (o.format == "json") {
    if (targets.size() == 1) {
      os << constant_estimate_json(estimate_constant(ledger, targets[0])) << "\n";
    } else {
      os << "[\n";
      for (std::size_t i = 0; i < targets.size(); ++i) {
        os << constant_estimate_json(estimate_constant(ledger, targets[i]));
        os << (i + 1 < targets.size() ? ",\n" : "\n");
      }
      os << "]\n";
    }
  } else {
    for (int t : targets) os << constant_estimate_csv(estimate_constant(ledger, t));
  }
  emit(o, os.str());
  return 0;
}

int cmd_verify(const CommonOpts& o, const std::string& suite, long long rosen_d) {
  std::string model_spec;
  if (o.have_quadratic || o.have_cyclotomic || !o.cubic.empty())
    model_spec = model_from(o).description();
  auto results = run_suite(suite, xmax_from(o), rosen_d, model_spec);
  std::ostringstream os;
  bool all_pass = true;
  for (const auto& r : results) {
    all_pass = all_pass && r.pass;
    os << (r.pass ? "PASS" : "FAIL") << " " << r.name << ": " << r.detail << "\n";
  }
  os << (all_pass ? "ALL PASS" : "FAILURES PRESENT") << " (" << results.size()
     << " checks)\n";
  emit(o, os.str());
  return all_pass ? 0 : 1;
}

int cmd_rosen(const CommonOpts& o, long long d) {
  uint64_t xmax = xmax_from(o);
  RosenReport rep = rosen_product(make_imag_quad_base(d), xmax,
                                  checkpoints_from(o, xmax));
  if (o.format == "json") {
    emit(o, rosen_report_json(rep) + "\n");
  } else {
    std::ostringstream os;
    char buf[160];
    os << "# field=" << rep.field << " e^-gamma_F=";
    std::snprintf(buf, sizeof(buf), "%.15g\n", rep.target);
    os << buf << "x,product,product_times_logx,scaled_residual\n";
    for (const auto& row : rep.rows) {
      std::snprintf(buf, sizeof(buf), "%llu,%.15g,%.15g,%.15g\n",
                    static_cast<unsigned long long>(row.x), row.product,
                    row.product_times_logx, row.scaled_residual);
      os << buf;
    }
    emit(o, os.str());
  }
  return 0;
}

int cmd_quadform(const CommonOpts& o, const std::string& form_spec) {
  uint64_t xmax = xmax_from(o);
  QuadForm form = parse_quadform(form_spec);
  QuadFormReport rep = quadform_product(form, xmax, checkpoints_from(o, xmax));
  if (o.format == "json") {
    emit(o, quadform_report_json(rep) + "\n");
  } else {
    std::ostringstream os;
    char buf[160];
    std::snprintf(buf, sizeof(buf),
                  "# form=%s disc=%lld h=%d ambiguous=%d target_exponent=%.15g "
                  "fitted_exponent=%.15g\n",
                  rep.form.to_string().c_str(), rep.disc, rep.class_number,
                  rep.ambiguous ? 1 : 0, rep.target_exponent, rep.fitted_exponent);
    os << buf << "x,log_product\n";
    for (const auto& [x, lp] : rep.log_products) {
      std::snprintf(buf, sizeof(buf), "%llu,%.15g\n",
                    static_cast<unsigned long long>(x), lp);
      os << buf;
    }
    emit(o, os.str());
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Truncated Mertens products over Chebotarev sets and the"
               " associated constants"};
  app.require_subcommand(1);

  CommonOpts o;
  std::string suite = "all";
  long long rosen_d = -1;
  std::string form_spec = "1,0,1";

  auto* product = app.add_subcommand("product", "checkpointed truncated products");
  add_model_flags(product, o);
  add_run_flags(product, o);
  product->add_option("--class", o.klass, "target conjugacy class");
  product->add_flag("--all-classes", o.all_classes, "all classes");

  auto* constant = app.add_subcommand("constant", "both constant determinations");
  add_model_flags(constant, o);
  add_run_flags(constant, o);
  constant->add_option("--class", o.klass, "target conjugacy class");
  constant->add_flag("--all-classes", o.all_classes, "all classes");

  auto* verify = app.add_subcommand("verify", "property suites");
  add_model_flags(verify, o);
  add_run_flags(verify, o);
  verify->add_option("--suite", suite, "one of: identities, orthogonality, "
                     "nonsense, kbound, rates, densities, partition, rosen, "
                     "quadform, lvalues, williams, constants, all");
  verify->add_option("-D,--discriminant", rosen_d,
                     "base-field D for the rosen suite");

  auto* rosen = app.add_subcommand("rosen", "Mertens product over an imaginary"
                                   " quadratic field");
  add_run_flags(rosen, o);
  rosen->add_option("-D,--discriminant", rosen_d, "squarefree D < 0");

  auto* quadform = app.add_subcommand("quadform", "product over primes"
                                      " represented by a quadratic form");
  add_run_flags(quadform, o);
  quadform->add_option("--form", form_spec, "form coefficients a,b,c");

  try {
    app.parse(argc, argv);
    if (product->parsed()) {
      apply_config(product, o, nullptr, nullptr, nullptr);
      return cmd_product(o);
    }
    if (constant->parsed()) {
      apply_config(constant, o, nullptr, nullptr, nullptr);
      return cmd_constant(o);
    }
    if (verify->parsed()) {
      apply_config(verify, o, &suite, &rosen_d, nullptr);
      return cmd_verify(o, suite, rosen_d);
    }
    if (rosen->parsed()) {
      apply_config(rosen, o, nullptr, &rosen_d, nullptr);
      return cmd_rosen(o, rosen_d);
    }
    if (quadform->parsed()) {
      apply_config(quadform, o, nullptr, nullptr, &form_spec);
      return cmd_quadform(o, form_spec);
    }
    return 2;
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const ResourceError& e) {
    std::cerr << "resource error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 3;
  }
}
