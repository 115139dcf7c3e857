// seedpa: security bounds for privacy amplification with imperfect seeds.
// One binary, nine subcommands: min-entropy estimation, the analytic
// distance bounds, key-length budgets, the brute-force theorem verifier,
// the decoy BB84 simulator, Toeplitz hashing of real files, and the RNG
// preset table. Every run is deterministic given its flags.
//
// Exit codes: 0 ok/pass, 1 bound violation found by verify, 2 I/O,
// 3 estimation, 4 resource limits, 5 config or bad parameters.

#include "seedpa/seedpa.hpp"

#include "CLI11.hpp"

#include <cstdio>
#include <string>
#include <vector>

namespace {

using seedpa::csv_cell;

void print_kv(const char* key, const std::string& value) {
  std::printf("%-28s %s\n", key, value.c_str());
}

void print_kv(const char* key, double value) { print_kv(key, csv_cell(value)); }

const std::vector<std::string> kScanHeader = {
    "distance_km", "h_avg",  "Q_mu",    "E_mu",    "Y1_lower",
    "e1_upper",    "n_sift", "key_len", "penalty_bits", "skr"};

std::vector<std::string> scan_row(const seedpa::KeyRateResult& r) {
  return {csv_cell(r.distance_km), csv_cell(r.h_avg),   csv_cell(r.q_mu),
          csv_cell(r.e_mu),        csv_cell(r.y1_lower), csv_cell(r.e1_upper),
          csv_cell(r.n_sift),      csv_cell(r.key_len), csv_cell(r.penalty),
          csv_cell(r.skr)};
}

void emit(const seedpa::CsvBuilder& csv, const std::string& out_path) {
  if (out_path.empty()) {
    std::fputs(csv.text().c_str(), stdout);
  } else {
    csv.write(out_path);
    std::printf("wrote %s\n", out_path.c_str());
  }
}

// defaults -> optional config file -> --set overrides, then validated
seedpa::SimConfig make_config(const std::string& config_path,
                              const std::vector<std::string>& sets) {
  seedpa::SimConfig cfg;
  if (!config_path.empty()) cfg = seedpa::load_config(config_path);
  for (const std::string& kv : sets) {
    const std::size_t eq = kv.find('=');
    if (eq == std::string::npos)
      throw seedpa::config_error("--set expects key=value, got '" + kv + "'");
    seedpa::apply_config_entry(cfg, kv.substr(0, eq), kv.substr(eq + 1));
  }
  cfg.validate();
  return cfg;
}

std::vector<double> default_h_grid() {
  std::vector<double> h;
  for (const seedpa::Preset& p : seedpa::table1_presets()) h.push_back(p.h_avg);
  std::sort(h.begin(), h.end());
  return h;
}

struct SeedFlags {
  double alpha = 0.0, beta = 0.0, gap = 0.0;
  CLI::Option *alpha_opt = nullptr, *gap_opt = nullptr;

  void attach(CLI::App* cmd) {
    alpha_opt = cmd->add_option("--alpha", alpha, "seed length in bits");
    auto* beta_opt = cmd->add_option("--beta", beta, "seed min-entropy in bits");
    gap_opt = cmd->add_option("--gap", gap, "alpha - beta directly (excludes --alpha/--beta)");
    alpha_opt->needs(beta_opt);
    beta_opt->needs(alpha_opt);
    gap_opt->excludes(alpha_opt)->excludes(beta_opt);
  }

  seedpa::SeedQuality resolve() const {
    if (gap_opt->count()) return seedpa::SeedQuality{gap, 0.0};
    return seedpa::SeedQuality{alpha, beta};
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"security bounds for privacy amplification with non-uniform seeds"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "seedpa 1.0.0");
  int rc = 0;

  // --- entropy ---
  struct {
    std::string file;
    unsigned symbol_bits = 1;
    double confidence = 0.99;
  } ent;
  auto* entropy_cmd =
      app.add_subcommand("entropy", "most-common-value min-entropy estimate of a sample file");
  entropy_cmd->add_option("file", ent.file, "raw sample bytes")->required();
  entropy_cmd->add_option("--symbol-bits", ent.symbol_bits, "bits per symbol (1-8)")
      ->check(CLI::Range(1u, 8u));
  entropy_cmd->add_option("--confidence", ent.confidence, "one-sided confidence level");
  entropy_cmd->callback([&] {
    const std::vector<std::uint8_t> data = seedpa::read_file_bytes(ent.file);
    const seedpa::MinEntropyEstimate est =
        seedpa::estimate_min_entropy_mcv(data, ent.symbol_bits, ent.confidence);
    print_kv("samples", std::to_string(est.sample_count));
    print_kv("symbol_bits", std::to_string(ent.symbol_bits));
    print_kv("point_estimate", est.point_estimate);
    print_kv("point_estimate_per_bit", est.point_estimate / ent.symbol_bits);
    print_kv("lower_bound", est.lower_confidence_bound);
    print_kv("lower_bound_per_bit", est.lower_confidence_bound / ent.symbol_bits);
    print_kv("confidence", est.confidence_level);
  });

  // --- bound / compare ---
  struct {
    double hmin = 0.0, key_len = 0.0, eps = 0.0;
    SeedFlags seed;
  } bnd, cmp;
  auto* bound_cmd = app.add_subcommand("bound", "distance-from-uniform bound (theorem form)");
  auto* compare_cmd =
      app.add_subcommand("compare", "both distance bounds plus which is tighter");
  const auto attach_bound_flags = [](CLI::App* cmd, auto& o) {
    cmd->add_option("--hmin", o.hmin, "smooth min-entropy of the input, bits")->required();
    cmd->add_option("--key-len", o.key_len, "extracted key length, bits")->required();
    cmd->add_option("--eps", o.eps, "smoothing parameter");
    o.seed.attach(cmd);
  };
  attach_bound_flags(bound_cmd, bnd);
  attach_bound_flags(compare_cmd, cmp);
  bound_cmd->callback([&] {
    const seedpa::BoundInputs in{bnd.hmin, bnd.key_len, bnd.seed.resolve(), bnd.eps};
    print_kv("gap", in.seed.gap());
    print_kv("theorem1", seedpa::theorem1_bound(in));
    print_kv("theorem1_raw", seedpa::theorem1_bound_raw(in));
  });
  compare_cmd->callback([&] {
    const seedpa::BoundInputs in{cmp.hmin, cmp.key_len, cmp.seed.resolve(), cmp.eps};
    const seedpa::BoundComparison r = seedpa::compare_bounds(in);
    print_kv("gap", in.seed.gap());
    print_kv("theorem1", r.theorem1_clamped);
    print_kv("theorem1_raw", r.theorem1_raw);
    print_kv("alternative", r.alternative_clamped);
    print_kv("alternative_raw", r.alternative_raw);
    print_kv("tighter", seedpa::to_string(r.tighter));
    print_kv("theorem1_tighter_predicate", r.theorem1_tighter_predicate ? "true" : "false");
  });

  // --- keylen ---
  struct {
    double hmin = 0.0, leak = 0.0;
    double eps_sec = 1e-9, eps_smooth = 1e-10, eps_cor = 1e-15;
    SeedFlags seed;
  } kl;
  auto* keylen_cmd = app.add_subcommand("keylen", "secure key length budget");
  keylen_cmd->add_option("--hmin", kl.hmin, "smooth min-entropy, bits")->required();
  keylen_cmd->add_option("--leak", kl.leak, "error-correction leakage, bits")->required();
  keylen_cmd->add_option("--eps-sec", kl.eps_sec, "secrecy failure probability");
  keylen_cmd->add_option("--eps-smooth", kl.eps_smooth, "smoothing parameter");
  keylen_cmd->add_option("--eps-cor", kl.eps_cor, "correctness failure probability");
  kl.seed.attach(keylen_cmd);
  keylen_cmd->callback([&] {
    const seedpa::SecurityParams sec{kl.eps_smooth, kl.eps_sec, kl.eps_cor};
    const seedpa::KeyLengthBudget b =
        seedpa::key_length_budget(kl.hmin, kl.leak, sec, kl.seed.resolve());
    print_kv("hmin", b.hmin);
    print_kv("leak_ec", b.leak_ec);
    print_kv("secrecy_cost", b.secrecy_cost);
    print_kv("correctness_cost", b.correctness_cost);
    print_kv("seed_penalty", b.penalty);
    print_kv("epsilon_secure", seedpa::epsilon_secure(sec.eps_sec, sec.eps_cor));
    print_kv("key_length", std::to_string(b.max_key_len));
  });

  // --- keyrate ---
  struct {
    std::string config, preset, out;
    std::vector<std::string> sets;
    double h_avg = 1.0, distance = -1.0;
  } kr;
  auto* keyrate_cmd =
      app.add_subcommand("keyrate", "single decoy BB84 key-rate evaluation (CSV row)");
  keyrate_cmd->add_option("--config", kr.config, "key=value config file")
      ->envname("SEEDPA_CONFIG");
  keyrate_cmd->add_option("--set", kr.sets, "override one config key, key=value (repeatable)");
  auto* kr_h = keyrate_cmd->add_option("--h-avg", kr.h_avg, "per-bit seed min-entropy");
  keyrate_cmd->add_option("--preset", kr.preset, "RNG preset name instead of --h-avg")
      ->excludes(kr_h);
  keyrate_cmd->add_option("--distance", kr.distance, "override distance_km");
  keyrate_cmd->add_option("--out", kr.out, "write CSV here instead of stdout");
  keyrate_cmd->callback([&] {
    seedpa::SimConfig cfg = make_config(kr.config, kr.sets);
    if (kr.distance >= 0.0) cfg.channel.distance_km = kr.distance;
    const double h = kr.preset.empty() ? kr.h_avg : seedpa::preset_h_avg(kr.preset);
    const seedpa::KeyRateResult r = key_rate(cfg.channel, cfg.protocol, cfg.security, h);
    seedpa::CsvBuilder csv(kScanHeader);
    csv.add_row(scan_row(r));
    emit(csv, kr.out);
  });

  // --- scan ---
  struct {
    std::string config;
    std::vector<std::string> sets;
    std::vector<double> h_grid;
    std::vector<double> distances;
    std::string out = "scan.csv";
    std::string critical_out = "h_critical.csv";
  } sc;
  auto* scan_cmd =
      app.add_subcommand("scan", "key rate over (h_avg, distance) grid, plus critical h per distance");
  scan_cmd->add_option("--config", sc.config, "key=value config file")->envname("SEEDPA_CONFIG");
  scan_cmd->add_option("--set", sc.sets, "override one config key, key=value (repeatable)");
  // defaults are applied only when the flag is absent, so an explicitly empty
  // grid stays empty and is rejected instead of silently falling back
  auto* sc_h = scan_cmd->add_option("--h-grid", sc.h_grid,
                                    "h_avg values (default: RNG preset values)")
                   ->delimiter(',')
                   ->check(CLI::Number);
  auto* sc_d = scan_cmd->add_option("--distances", sc.distances,
                                    "distances in km (default: 10,50,100)")
                   ->delimiter(',')
                   ->check(CLI::Number);
  scan_cmd->add_option("--out", sc.out, "key-rate CSV path")->envname("SEEDPA_SCAN_OUT");
  scan_cmd->add_option("--critical-out", sc.critical_out, "critical-h CSV path")
      ->envname("SEEDPA_CRITICAL_OUT");
  scan_cmd->callback([&] {
    if (!sc_h->count()) sc.h_grid = default_h_grid();
    if (!sc_d->count()) sc.distances = {10.0, 50.0, 100.0};
    const seedpa::SimConfig cfg = make_config(sc.config, sc.sets);
    const seedpa::ScanResult res =
        seedpa::scan(sc.h_grid, sc.distances, cfg.channel, cfg.protocol, cfg.security);
    seedpa::CsvBuilder rows(kScanHeader);
    for (const seedpa::KeyRateResult& r : res.rows) rows.add_row(scan_row(r));
    rows.write(sc.out);
    seedpa::CsvBuilder crit({"distance_km", "h_critical"});
    for (const seedpa::CriticalPoint& c : res.critical)
      crit.add_row({csv_cell(c.distance_km), csv_cell(c.h_critical)});
    crit.write(sc.critical_out);
    std::printf("wrote %zu rows to %s\n", res.rows.size(), sc.out.c_str());
    std::printf("wrote %zu rows to %s\n", res.critical.size(), sc.critical_out.c_str());
  });

  // --- pa ---
  struct {
    std::string key_file, seed_file, out;
    std::size_t input_bits = 0, output_bits = 0;
  } pa;
  auto* pa_cmd = app.add_subcommand("pa", "privacy-amplify a key file with a Toeplitz seed file");
  pa_cmd->add_option("--key-file", pa.key_file, "input key bytes (MSB-first bits)")->required();
  pa_cmd->add_option("--seed-file", pa.seed_file, "seed bytes, input+output-1 bits")->required();
  pa_cmd->add_option("--input-bits", pa.input_bits, "key length n in bits")
      ->required()
      ->check(CLI::PositiveNumber);
  pa_cmd->add_option("--output-bits", pa.output_bits, "hashed length l in bits")
      ->required()
      ->check(CLI::PositiveNumber);
  pa_cmd->add_option("--out", pa.out, "output file for the hashed bits")->required();
  pa_cmd->callback([&] {
    const std::vector<std::uint8_t> key_bytes = seedpa::read_file_bytes(pa.key_file);
    const std::vector<std::uint8_t> seed_bytes = seedpa::read_file_bytes(pa.seed_file);
    const seedpa::BitVec input = seedpa::BitVec::from_bytes_msb(key_bytes, pa.input_bits);
    seedpa::ToeplitzSeed seed;
    seed.bits =
        seedpa::BitVec::from_bytes_msb(seed_bytes, pa.input_bits + pa.output_bits - 1);
    seed.input_len = pa.input_bits;
    seed.output_len = pa.output_bits;
    const seedpa::BitVec hashed = seedpa::privacy_amplify(input, seed);
    seedpa::atomic_write_bytes(pa.out, hashed.to_bytes_msb());
    std::printf("hashed %zu bits -> %zu bits, wrote %s\n", input.size(), hashed.size(),
                pa.out.c_str());
  });

  // --- verify ---
  struct {
    seedpa::SweepSpec spec;
    unsigned n = 0, l = 0;
    std::vector<std::string> strategies;
    std::string out;
  } vf;
  auto* verify_cmd =
      app.add_subcommand("verify", "brute-force check of the non-uniform-seed bound");
  auto* vf_n = verify_cmd->add_option("--n", vf.n, "single input length");
  auto* vf_l = verify_cmd->add_option("--l", vf.l, "single output length");
  verify_cmd->add_option("--n-min", vf.spec.n_min, "sweep lower n")->excludes(vf_n);
  verify_cmd->add_option("--n-max", vf.spec.n_max, "sweep upper n")->excludes(vf_n);
  verify_cmd->add_option("--l-min", vf.spec.l_min, "sweep lower l")->excludes(vf_l);
  verify_cmd->add_option("--l-max", vf.spec.l_max, "sweep upper l")->excludes(vf_l);
  verify_cmd->add_option("--trials", vf.spec.trials, "random joint distributions per family");
  verify_cmd->add_option("--e-alphabet", vf.spec.e_alphabet, "side-information alphabet size");
  verify_cmd->add_option("--rng-seed", vf.spec.rng_seed, "sweep RNG seed")
      ->envname("SEEDPA_RNG_SEED");
  verify_cmd->add_option("--beta", vf.spec.betas,
                         "explicit beta levels (default: alpha, alpha-1, alpha-2, alpha/2)");
  verify_cmd->add_option("--strategy", vf.strategies,
                         "seed strategies: spike, block, uniform (default: all)");
  verify_cmd->add_option("--out", vf.out, "write CSV here instead of stdout");
  verify_cmd->callback([&] {
    if (vf_n->count()) vf.spec.n_min = vf.spec.n_max = vf.n;
    if (vf_l->count()) vf.spec.l_min = vf.spec.l_max = vf.l;
    if (!vf.strategies.empty()) {
      vf.spec.strategies.clear();
      for (const std::string& s : vf.strategies)
        vf.spec.strategies.push_back(seedpa::seed_strategy_from_string(s));
    }
    const std::vector<seedpa::SweepRow> rows = seedpa::run_verification_sweep(vf.spec);
    seedpa::CsvBuilder csv({"n", "l", "alpha", "beta", "strategy", "trial", "hmin", "delta",
                            "bound", "margin", "pass"});
    std::size_t violations = 0;
    for (const seedpa::SweepRow& r : rows) {
      if (!r.report.pass) ++violations;
      csv.add_row({csv_cell(r.n), csv_cell(r.l), csv_cell(r.alpha), csv_cell(r.beta),
                   seedpa::to_string(r.strategy), csv_cell(r.trial), csv_cell(r.report.hmin),
                   csv_cell(r.report.delta), csv_cell(r.report.bound),
                   csv_cell(r.report.margin), csv_cell(r.report.pass)});
    }
    emit(csv, vf.out);
    std::fprintf(stderr, "verify: %zu instances, %zu violations\n", rows.size(), violations);
    if (violations > 0) rc = 1;
  });

  // --- presets ---
  struct {
    std::string name;
  } pr;
  auto* presets_cmd = app.add_subcommand("presets", "RNG per-bit min-entropy presets");
  presets_cmd->add_option("--name", pr.name, "print the value for one preset");
  presets_cmd->callback([&] {
    if (!pr.name.empty()) {
      std::printf("%s\n", csv_cell(seedpa::preset_h_avg(pr.name)).c_str());
      return;
    }
    seedpa::CsvBuilder csv({"name", "h_avg"});
    for (const seedpa::Preset& p : seedpa::table1_presets())
      csv.add_row({p.name, csv_cell(p.h_avg)});
    std::fputs(csv.text().c_str(), stdout);
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 5;
  } catch (const seedpa::io_error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const seedpa::estimation_error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  } catch (const seedpa::resource_error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 4;
  } catch (const std::exception& e) {  // config, validation, anything else
    std::fprintf(stderr, "error: %s\n", e.what());
    return 5;
  }
  return rc;
}
