#include "magictrap/cli.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <limits>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "magictrap/coherence.hpp"
#include "magictrap/magic.hpp"
#include "magictrap/presets.hpp"
#include "magictrap/scatter.hpp"
#include "magictrap/zeeman.hpp"

namespace magictrap {
namespace {

using ordered_json = nlohmann::ordered_json;
constexpr int kSchemaVersion = 1;

class UsageError : public Error {
 public:
  using Error::Error;
};

std::string sci(double v) {
  if (!std::isfinite(v)) return "nan";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.8e", v);
  return buf;
}

// Rounded to 9 significant digits so the JSON serializer prints at most that many.
ordered_json num(double v) {
  if (!std::isfinite(v)) return nullptr;
  return std::strtod(sci(v).c_str(), nullptr);
}

std::pair<int, int> parse_pair(const std::string& s) {
  const auto comma = s.find(',');
  if (comma == std::string::npos) throw UsageError("--pair expects m,n (got '" + s + "')");
  try {
    std::size_t p1 = 0, p2 = 0;
    const std::string a = s.substr(0, comma), b = s.substr(comma + 1);
    const int m1 = std::stoi(a, &p1), m2 = std::stoi(b, &p2);
    if (p1 != a.size() || p2 != b.size()) throw std::invalid_argument("trailing");
    return {m1, m2};
  } catch (const std::logic_error&) {
    throw UsageError("--pair expects two integers m,n (got '" + s + "')");
  }
}

struct Config {
  std::string data_dir;
  std::string species = "cs";
  std::string pair = "0,0";
  std::string excited = "7S1_2";
  double sideband_ghz = 0.0;
  double mod_depth = kPresetModulationDepth;
  double crossed_split_ghz = 0.0;
  std::string format;
  std::string out;
  bool approx_tpp = false;
  bool exact_tpp = false;
};

std::filesystem::path resolve_data_dir(const Config& c) {
  return c.data_dir.empty() ? default_data_dir() : std::filesystem::path(c.data_dir);
}

AtomDataset open_species(const Config& c, const std::string& species) {
  const auto dir = resolve_data_dir(c);
  if (!std::filesystem::is_directory(dir)) throw DatasetError("data directory " + dir.string() + " does not exist");
  if (species.empty() || !std::filesystem::is_directory(dir / species)) {
    throw UsageError("unknown species '" + species + "' in " + dir.string());
  }
  return load_dataset(dir, species);
}

int excited_index(const AtomDataset& ds, const std::string& key) {
  const int idx = ds.find_level(key);
  if (idx < 0) throw UsageError("unknown manifold '" + key + "' for species " + ds.species.name);
  return idx;
}

StarkOptions stark_options(const Config& c) {
  if (c.approx_tpp && c.exact_tpp) throw UsageError("--exact-tpp and --approx-tpp are exclusive");
  StarkOptions o;
  o.tpp_mode = c.approx_tpp ? TppMode::kApprox : TppMode::kExact;
  return o;
}

SpectrumTemplate spectrum_template(double sideband_ghz, double depth, double crossed_ghz) {
  if (sideband_ghz < 0 || crossed_ghz < 0) throw UsageError("sideband and crossed splittings must be positive");
  if (sideband_ghz > 0 && crossed_ghz > 0) throw UsageError("--sideband-ghz and --crossed-split-ghz are exclusive");
  if (sideband_ghz > 0) return SpectrumTemplate::sideband(sideband_ghz * 1e9, depth, 2);
  if (crossed_ghz > 0) return SpectrumTemplate::crossed(crossed_ghz * 1e9);
  return SpectrumTemplate::monochromatic();
}

std::string resolve_format(const Config& c, const char* fallback) {
  const std::string f = c.format.empty() ? fallback : c.format;
  if (f != "csv" && f != "json") throw UsageError("--format must be csv or json");
  return f;
}

struct MagicRow {
  std::string species;
  int m1 = 0, m2 = 0;
  std::string excited;
  double sideband_ghz = 0.0;
  double lambda_nm = NAN, delta_nu0_ghz = NAN, i0_gw = NAN, u_t = NAN, k_nu = NAN, k_i_fhz = NAN;
  double gamma_1p = NAN, gamma_2p = NAN;
  bool converged = false;
  int iterations = 0;
  std::string status;
};

MagicRow solve_row(const AtomDataset& ds, int m1, int m2, const std::string& excited, const SpectrumTemplate& tmpl,
                   const StarkOptions& opt) {
  MagicRow r;
  r.species = ds.species.name;
  r.m1 = m1;
  r.m2 = m2;
  r.excited = excited;
  r.sideband_ghz = tmpl.kind == SpectrumTemplate::Kind::kSideband ? tmpl.modulation_hz / 1e9 : 0.0;
  const int e = excited_index(ds, excited);
  GroundStatePair pair;
  try {
    pair = make_pair(ds, m1, m2);
  } catch (const DomainError& ex) {
    throw UsageError(ex.what());
  }
  const StarkModel model(ds, pair, e, opt);
  try {
    const MagicSolution s = find_magic(model, tmpl);
    r.lambda_nm = phys::kSpeedOfLight / s.nu0_abs * 1e9;
    r.delta_nu0_ghz = s.delta_nu0 / 1e9;
    r.i0_gw = s.i0 / 1e9;
    r.u_t = s.trap_depth;
    r.k_nu = s.k_nu;
    r.k_i_fhz = s.k_i * 1e15;
    const TrapSpectrum spec = tmpl.at(s.nu0_abs, s.i0);
    r.gamma_1p = raman_rate_1p(ds, pair, spec, opt);
    r.gamma_2p = scatter_rate_2p(model, spec);
    r.converged = s.converged;
    r.iterations = s.iterations;
    r.status = s.status;
  } catch (const ResonanceError& ex) {
    r.status = ex.what();
  } catch (const ConvergenceError& ex) {
    r.status = ex.what();
  }
  return r;
}

ordered_json magic_json(const MagicRow& r) {
  ordered_json j;
  j["schema_version"] = kSchemaVersion;
  j["species"] = r.species;
  j["pair"] = {r.m1, r.m2};
  j["excited"] = r.excited;
  j["lambda_nm"] = num(r.lambda_nm);
  j["delta_nu0_ghz"] = num(r.delta_nu0_ghz);
  j["i0_gw_m2"] = num(r.i0_gw);
  j["u_t_uk"] = num(r.u_t);
  j["k_nu_hz_inv"] = num(r.k_nu);
  j["k_i_fhz_m4_w2"] = num(r.k_i_fhz);
  j["gamma_1p_hz"] = num(r.gamma_1p);
  j["gamma_2p_hz"] = num(r.gamma_2p);
  j["converged"] = r.converged;
  j["iterations"] = r.iterations;
  return j;
}

const char* kMagicCsvHeader =
    "species,pair,excited,sideband_ghz,lambda_nm,delta_nu0_ghz,i0_gw_m2,u_t_uk,k_nu_hz_inv,k_i_fhz_m4_w2,"
    "gamma_1p_hz,gamma_2p_hz,converged,iterations\n";

std::string magic_csv_line(const MagicRow& r) {
  std::ostringstream s;
  s << r.species << ",\"" << r.m1 << "," << r.m2 << "\"," << r.excited << "," << sci(r.sideband_ghz) << ","
    << sci(r.lambda_nm) << "," << sci(r.delta_nu0_ghz) << "," << sci(r.i0_gw) << "," << sci(r.u_t) << ","
    << sci(r.k_nu) << "," << sci(r.k_i_fhz) << "," << sci(r.gamma_1p) << "," << sci(r.gamma_2p) << ","
    << (r.converged ? "true" : "false") << "," << r.iterations << "\n";
  return s.str();
}

std::string dump(const ordered_json& j) { return j.dump(2) + "\n"; }

struct Output {
  std::string text;
  int code = kExitOk;
};

Output cmd_landscape(const Config& c, double nu_min, double nu_max, std::size_t nu_steps, double i_min, double i_max,
                     std::size_t i_steps, std::optional<double> power_mw, std::optional<double> waist_um,
                     unsigned threads) {
  const AtomDataset ds = open_species(c, c.species);
  const auto [m1, m2] = parse_pair(c.pair);
  const int e = excited_index(ds, c.excited);
  const StarkModel model(ds, make_pair(ds, m1, m2), e, stark_options(c));
  const SpectrumTemplate tmpl = spectrum_template(c.sideband_ghz, c.mod_depth, c.crossed_split_ghz);
  const double mid = fine_midpoint_hz(ds, e);
  if (nu_steps == 0 || i_steps == 0) throw UsageError("grid steps must be positive");
  if (nu_steps > 1 && !(nu_max > nu_min)) throw UsageError("frequency range must be increasing");
  std::vector<double> nu = linear_axis(mid + nu_min * 1e9, mid + nu_max * 1e9, nu_steps);
  std::vector<double> in;
  if (power_mw || waist_um) {
    if (!power_mw || !waist_um || !(*power_mw > 0) || !(*waist_um > 0)) {
      throw UsageError("--power-mw and --waist-um must be given together and be positive");
    }
    const double w = *waist_um * 1e-6;
    in = {2.0 * (*power_mw * 1e-3) / (phys::kPi * w * w)};
  } else {
    if (!(i_min > 0) || (i_steps > 1 && !(i_max > i_min))) throw UsageError("intensity range must be positive and increasing");
    in = linear_axis(i_min * 1e9, i_max * 1e9, i_steps);
  }
  const LandscapeGrid g = dls_landscape(model, tmpl, nu, in, threads);
  if (resolve_format(c, "csv") == "json") {
    ordered_json j;
    j["schema_version"] = kSchemaVersion;
    j["species"] = ds.species.name;
    j["pair"] = {m1, m2};
    j["excited"] = c.excited;
    ordered_json jn = ordered_json::array(), ji = ordered_json::array(), jd = ordered_json::array();
    for (double v : g.nu_hz) jn.push_back(num(v));
    for (double v : g.intensity) ji.push_back(num(v));
    for (std::size_t r = 0; r < g.intensity.size(); ++r) {
      ordered_json row = ordered_json::array();
      for (std::size_t k = 0; k < g.nu_hz.size(); ++k) row.push_back(num(g.at(r, k)));
      jd.push_back(row);
    }
    j["nu_hz"] = jn;
    j["i_w_m2"] = ji;
    j["dls_hz"] = jd;
    return {dump(j)};
  }
  std::ostringstream s;
  s << "# schema=" << kSchemaVersion << "\n";
  s << "nu_hz,i_w_m2,dls_hz\n";
  for (std::size_t r = 0; r < g.intensity.size(); ++r) {
    for (std::size_t k = 0; k < g.nu_hz.size(); ++k) {
      s << sci(g.nu_hz[k]) << "," << sci(g.intensity[r]) << "," << sci(g.at(r, k)) << "\n";
    }
  }
  return {s.str()};
}

Output cmd_magic(const Config& c) {
  const AtomDataset ds = open_species(c, c.species);
  const auto [m1, m2] = parse_pair(c.pair);
  const SpectrumTemplate tmpl = spectrum_template(c.sideband_ghz, c.mod_depth, c.crossed_split_ghz);
  const MagicRow r = solve_row(ds, m1, m2, c.excited, tmpl, stark_options(c));
  Output o;
  if (resolve_format(c, "json") == "json") {
    o.text = dump(magic_json(r));
  } else {
    o.text = "# schema=" + std::to_string(kSchemaVersion) + "\n" + kMagicCsvHeader + magic_csv_line(r);
  }
  o.code = r.converged ? kExitOk : kExitNumerical;
  return o;
}

Output cmd_table(const Config& c, const std::string& preset) {
  std::vector<PresetRow> rows;
  try {
    rows = preset_rows(preset);
  } catch (const DomainError& e) {
    throw UsageError(e.what());
  }
  const StarkOptions opt = stark_options(c);
  std::vector<MagicRow> results;
  std::string current;
  AtomDataset ds;
  for (const PresetRow& p : rows) {
    if (p.species != current) {
      ds = open_species(c, p.species);
      current = p.species;
    }
    const SpectrumTemplate tmpl = spectrum_template(p.sideband_ghz, kPresetModulationDepth, 0.0);
    results.push_back(solve_row(ds, p.m1, p.m2, p.excited, tmpl, opt));
  }
  bool any = false;
  for (const MagicRow& r : results) any = any || r.converged;
  Output o;
  o.code = any ? kExitOk : kExitNumerical;
  if (resolve_format(c, "csv") == "json") {
    ordered_json j;
    j["schema_version"] = kSchemaVersion;
    j["preset"] = preset;
    ordered_json arr = ordered_json::array();
    for (const MagicRow& r : results) {
      ordered_json row = magic_json(r);
      row.erase("schema_version");
      row["sideband_ghz"] = num(r.sideband_ghz);
      arr.push_back(row);
    }
    j["rows"] = arr;
    o.text = dump(j);
    return o;
  }
  std::ostringstream s;
  s << "# schema=" << kSchemaVersion << "\n# preset=" << preset << "\n" << kMagicCsvHeader;
  for (const MagicRow& r : results) s << magic_csv_line(r);
  o.text = s.str();
  return o;
}

Output cmd_zeeman(const Config& c) {
  const AtomDataset ds = open_species(c, c.species);
  const auto [m1, m2] = parse_pair(c.pair);
  GroundStatePair pair;
  try {
    pair = make_pair(ds, m1, m2);
  } catch (const DomainError& e) {
    throw UsageError(e.what());
  }
  const MagicField f = find_magic_B(make_zeeman_context(ds), pair);
  if (resolve_format(c, "json") == "csv") {
    std::ostringstream s;
    s << "# schema=" << kSchemaVersion << "\nspecies,pair,b0_gauss,k_m_hz_gauss2\n"
      << ds.species.name << ",\"" << m1 << "," << m2 << "\"," << sci(f.b0_gauss) << "," << sci(f.k_m) << "\n";
    return {s.str()};
  }
  ordered_json j;
  j["schema_version"] = kSchemaVersion;
  j["species"] = ds.species.name;
  j["pair"] = {m1, m2};
  j["b0_gauss"] = num(f.b0_gauss);
  j["k_m_hz_gauss2"] = num(f.k_m);
  return {dump(j)};
}

Output cmd_coherence(const Config& c, const std::vector<double>& temps_uk, const std::string& density_flag,
                     std::optional<double> dnu_mhz, std::optional<double> di_rel, std::optional<double> db_mg) {
  if (temps_uk.empty()) throw UsageError("--temperatures-uk needs at least one value");
  for (double t : temps_uk) {
    if (!(t > 0)) throw UsageError("temperatures must be positive");
  }
  DlsDensity density;
  if (density_flag == "boltzmann") density = DlsDensity::kBoltzmann;
  else if (density_flag == "published") density = DlsDensity::kPublished;
  else throw UsageError("--density must be boltzmann or published");

  const AtomDataset ds = open_species(c, c.species);
  const auto [m1, m2] = parse_pair(c.pair);
  const int e = excited_index(ds, c.excited);
  const GroundStatePair pair = make_pair(ds, m1, m2);
  const StarkModel model(ds, pair, e, stark_options(c));
  const SpectrumTemplate tmpl = spectrum_template(c.sideband_ghz, c.mod_depth, c.crossed_split_ghz);
  const MagicSolution sol = find_magic(model, tmpl);
  if (!sol.converged) throw ConvergenceError("magic point did not converge (" + sol.status + ")");
  const double k_e = k_E_from_k_I(sol.k_i, sol.i0, sol.trap_depth);
  std::vector<double> t2;
  for (double t : temps_uk) t2.push_back(coherence_time(make_ensemble(t * 1e-6, k_e, 0.0, density)));

  const bool budget = dnu_mhz || di_rel || db_mg;
  SensitivityBudget b;
  double k_m = 0.0;
  if (budget) {
    k_m = find_magic_B(make_zeeman_context(ds), pair).k_m;
    b = sensitivity_budget(sol, k_m, dnu_mhz.value_or(0.0) * 1e6, di_rel.value_or(0.0), db_mg.value_or(0.0) * 1e-3);
  }
  if (resolve_format(c, "csv") == "json") {
    ordered_json j;
    j["schema_version"] = kSchemaVersion;
    j["species"] = ds.species.name;
    j["pair"] = {m1, m2};
    j["excited"] = c.excited;
    j["density"] = density_name(density);
    j["phase"] = "2*pi*x*t";
    ordered_json rows = ordered_json::array();
    for (std::size_t k = 0; k < temps_uk.size(); ++k) {
      ordered_json r;
      r["temperature_uk"] = num(temps_uk[k]);
      r["k_e_hz_uk2"] = num(k_e);
      r["t2_s"] = num(t2[k]);
      rows.push_back(r);
    }
    j["rows"] = rows;
    if (budget) {
      ordered_json s;
      s["k_m_hz_gauss2"] = num(k_m);
      s["frequency_hz"] = num(b.frequency_hz);
      s["intensity_hz"] = num(b.intensity_hz);
      s["field_hz"] = num(b.field_hz);
      s["total_hz"] = num(b.total());
      j["sensitivity"] = s;
    }
    return {dump(j)};
  }
  std::ostringstream s;
  s << "# schema=" << kSchemaVersion << "\n# density=" << density_name(density) << "\n# phase=2*pi*x*t\n";
  s << "temperature_uk,k_e_hz_uk2,t2_s\n";
  for (std::size_t k = 0; k < temps_uk.size(); ++k) s << sci(temps_uk[k]) << "," << sci(k_e) << "," << sci(t2[k]) << "\n";
  if (budget) {
    s << "# sensitivity\nterm,offset_hz\n";
    s << "frequency," << sci(b.frequency_hz) << "\n";
    s << "intensity," << sci(b.intensity_hz) << "\n";
    s << "field," << sci(b.field_hz) << "\n";
    s << "total," << sci(b.total()) << "\n";
  }
  return {s.str()};
}

Output cmd_lines(const Config& c) {
  const AtomDataset ds = open_species(c, c.species);
  const int e = excited_index(ds, c.excited);
  const std::vector<TppLine> lines = degenerate_lines(ds, e);
  const double mid = fine_midpoint_hz(ds, e);
  if (resolve_format(c, "json") == "csv") {
    std::ostringstream s;
    s << "# schema=" << kSchemaVersion << "\nf_g,f_e,nu_hz,relative_ghz\n";
    for (const TppLine& l : lines) {
      s << format_doubled(l.two_f_g) << "," << format_doubled(l.two_f_e) << "," << sci(l.nu_hz) << ","
        << sci(l.relative_hz / 1e9) << "\n";
    }
    return {s.str()};
  }
  ordered_json j;
  j["schema_version"] = kSchemaVersion;
  j["species"] = ds.species.name;
  j["excited"] = c.excited;
  j["fine_midpoint_hz"] = num(mid);
  ordered_json arr = ordered_json::array();
  double rel_sum = 0.0;
  for (const TppLine& l : lines) {
    ordered_json r;
    r["f_g"] = format_doubled(l.two_f_g);
    r["f_e"] = format_doubled(l.two_f_e);
    r["nu_hz"] = num(l.nu_hz);
    r["relative_ghz"] = num(l.relative_hz / 1e9);
    arr.push_back(r);
    rel_sum += l.relative_hz;
  }
  j["lines"] = arr;
  ordered_json sep = ordered_json::array();
  for (std::size_t a = 0; a < lines.size(); ++a) {
    for (std::size_t b = a + 1; b < lines.size(); ++b) sep.push_back(num(std::abs(lines[b].nu_hz - lines[a].nu_hz) / 1e9));
  }
  j["separations_ghz"] = sep;
  j["midpoint_relative_ghz"] = lines.empty() ? ordered_json(nullptr) : num(rel_sum / lines.size() / 1e9);
  return {dump(j)};
}

void write_output(const Output& o, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    out << o.text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw UsageError("cannot open output file " + path);
  f << o.text;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Magic optical-trap conditions from one- and two-photon light shifts", "magictrap_cli"};
  app.require_subcommand(1);
  app.fallthrough();
  Config c;
  app.add_option("--data-dir", c.data_dir, "atomic data directory (default: $MAGICTRAP_DATA or the bundled data)");
  app.add_option("--species", c.species, "cs, rb87 or rb85")->capture_default_str();
  app.add_option("--pair", c.pair, "ground pair m,n as (F_low m) / (F_high n)")->capture_default_str();
  app.add_option("--excited", c.excited, "two-photon excited manifold, e.g. 7S1_2")->capture_default_str();
  app.add_option("--sideband-ghz", c.sideband_ghz, "phase-modulation frequency for a polychromatic beam");
  app.add_option("--mod-depth", c.mod_depth, "phase-modulation depth")->capture_default_str();
  app.add_option("--crossed-split-ghz", c.crossed_split_ghz, "frequency split of two crossed beams");
  app.add_option("--format", c.format, "csv or json");
  app.add_option("--out", c.out, "output file (default: stdout)");
  app.add_flag("--exact-tpp", c.exact_tpp, "exact two-photon level shift (default)");
  app.add_flag("--approx-tpp", c.approx_tpp, "perturbative two-photon level shift");

  double nu_min = -1.0, nu_max = 1.0, i_min = 0.01, i_max = 0.2;
  std::size_t nu_steps = 201, i_steps = 20;
  std::optional<double> power_mw, waist_um;
  unsigned threads = 0;
  auto* land = app.add_subcommand("landscape", "DLS grid over laser frequency and intensity");
  land->add_option("--nu-min-ghz", nu_min, "lower frequency, relative to half the fine-structure interval")->capture_default_str();
  land->add_option("--nu-max-ghz", nu_max, "upper frequency, same reference")->capture_default_str();
  land->add_option("--nu-steps", nu_steps)->capture_default_str();
  land->add_option("--i-min-gw", i_min, "lower intensity in GW/m^2")->capture_default_str();
  land->add_option("--i-max-gw", i_max, "upper intensity in GW/m^2")->capture_default_str();
  land->add_option("--i-steps", i_steps)->capture_default_str();
  land->add_option("--power-mw", power_mw, "beam power; with --waist-um gives a single peak intensity 2P/(pi w^2)");
  land->add_option("--waist-um", waist_um, "beam waist radius");
  land->add_option("--threads", threads, "worker threads (0: all cores); output does not depend on it");

  auto* magic = app.add_subcommand("magic", "doubly magic frequency and intensity");
  std::string preset;
  auto* table = app.add_subcommand("table", "reproduce a preset result table");
  table->add_option("--preset", preset, "table1, tableS5, tableS6 or tableS7")->required();
  auto* zee = app.add_subcommand("zeeman", "magic magnetic field and k_M");

  std::vector<double> temps;
  std::string density = "boltzmann";
  std::optional<double> dnu_mhz, di_rel, db_mg;
  auto* coh = app.add_subcommand("coherence", "thermal dephasing time at the magic point");
  coh->add_option("--temperatures-uk", temps, "comma-separated temperatures")->delimiter(',')->required();
  coh->add_option("--density", density, "boltzmann or published")->capture_default_str();
  coh->add_option("--dnu-mhz", dnu_mhz, "frequency excursion for the sensitivity budget");
  coh->add_option("--di-rel", di_rel, "relative intensity excursion");
  coh->add_option("--db-mg", db_mg, "field excursion in mG");
  auto* lines = app.add_subcommand("lines", "degenerate two-photon lines of the excited manifold");

  std::vector<std::string> args;
  for (int k = argc - 1; k > 0; --k) args.emplace_back(argv[k]);
  try {
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    Output o;
    if (*land) o = cmd_landscape(c, nu_min, nu_max, nu_steps, i_min, i_max, i_steps, power_mw, waist_um, threads);
    else if (*magic) o = cmd_magic(c);
    else if (*table) o = cmd_table(c, preset);
    else if (*zee) o = cmd_zeeman(c);
    else if (*coh) o = cmd_coherence(c, temps, density, dnu_mhz, di_rel, db_mg);
    else if (*lines) o = cmd_lines(c);
    write_output(o, c.out, out);
    return o.code;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const DatasetError& e) {
    err << "dataset error: " << e.what() << "\n";
    return kExitDataset;
  } catch (const ResonanceError& e) {
    err << "resonance: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const ConvergenceError& e) {
    err << "no convergence: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitNumerical;
  }
}

}  // namespace magictrap
