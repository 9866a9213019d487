#include "arraymirror/cli.hpp"

#include <cmath>
#include <iostream>
#include <numbers>
#include <optional>

#include "CLI11.hpp"
#include "arraymirror/bands.hpp"
#include "arraymirror/config_file.hpp"
#include "arraymirror/eit.hpp"
#include "arraymirror/green.hpp"
#include "arraymirror/scattering.hpp"
#include "arraymirror/table.hpp"
#include "arraymirror/units.hpp"
#include "arraymirror/verify.hpp"

namespace arraymirror {

namespace {

// Values that may come from the config file or the command line.
struct Settings {
  std::string config_path;
  std::optional<double> d, gamma_r, theta, omega_c, delta_c;
  std::optional<std::string> pol, plane;
  std::string probe = "p";
  std::string output;
  std::string format = "csv";
  std::string accel = "ewald";
  double radius = 5.0;
};

struct Effective {
  SystemConfig config;
  ProbeGeometry geometry;
  DriveField drive;
  AccelParams accel;
};

void add_common(CLI::App* cmd, Settings& s) {
  cmd->add_option("--config", s.config_path, "TOML config file; flags override its values");
  cmd->add_option("--pol", s.pol, "dipole orientation: z or x");
  cmd->add_option("--d", s.d, "lattice constant in units of lambda");
  cmd->add_option("--gamma-r", s.gamma_r, "upper-level linewidth in units of Gamma_e");
  cmd->add_option("-o,--output", s.output, "output file (stdout when omitted)");
  cmd->add_option("--format", s.format, "csv or json");
  cmd->add_option("--accel", s.accel, "shift summation: ewald or gaussian");
  cmd->add_option("--radius", s.radius, "base damping radius for --accel gaussian");
}

void add_geometry(CLI::App* cmd, Settings& s) {
  cmd->add_option("--theta", s.theta, "incident angle in radians");
  cmd->add_option("--plane", s.plane, "incidence plane: xz or yz");
}

void add_drive(CLI::App* cmd, Settings& s) {
  cmd->add_option("--omega-c", s.omega_c, "control Rabi frequency");
  cmd->add_option("--delta-c", s.delta_c, "control detuning");
}

template <class T>
T pick(const std::optional<T>& flag, const std::optional<T>& file, T fallback) {
  if (flag) return *flag;
  if (file) return *file;
  return fallback;
}

Effective resolve(const Settings& s) {
  FileConfig file;
  if (!s.config_path.empty()) file = load_config_file(s.config_path);
  const double d = pick(s.d, file.lattice_constant, 0.1);
  const double gr = pick(s.gamma_r, file.gamma_r, 0.3);
  const std::string pol = pick(s.pol, file.polarization, std::string("z"));
  const double theta = pick(s.theta, file.theta, 0.0);
  const std::string plane = pick(s.plane, file.plane, std::string("xz"));
  Effective e{make_config(d, gr, parse_dipole(pol)),
              make_geometry(theta, parse_plane(plane), parse_probe_polarization(s.probe)),
              DriveField{pick(s.omega_c, file.omega_c, 0.0), pick(s.delta_c, file.delta_c, 0.0)},
              AccelParams{}};
  if (s.accel == "gaussian") {
    e.accel.method = SumMethod::GaussianRichardson;
    e.accel.base_radius = s.radius;
  } else if (s.accel != "ewald") {
    throw Error(ErrorCode::InvalidArgument, "unknown --accel '" + s.accel + "'");
  }
  return e;
}

void echo(SweepTable& t, const Effective& e, const std::string& command) {
  t.meta["command"] = command;
  t.meta["config"] = config_meta(e.config);
  t.meta["theta"] = e.geometry.theta;
  t.meta["plane"] = std::string(to_string(e.geometry.plane));
  t.meta["probe_polarization"] = std::string(to_string(e.geometry.polarization));
  t.meta["omega_c"] = e.drive.omega_c.real();
  t.meta["delta_c"] = e.drive.delta_c;
  t.meta["accel"] = e.accel.method == SumMethod::Ewald ? "ewald" : "gaussian";
}

void emit(const SweepTable& t, const Settings& s, std::ostream& out) {
  const TableFormat f = parse_format(s.format);
  if (s.output.empty() || s.output == "-") {
    if (t.rows.empty()) throw Error(ErrorCode::InvalidArgument, "refusing to write an empty table");
    out << (f == TableFormat::Csv ? render_csv(t) : render_json(t));
  } else {
    write_table(t, f, s.output);
  }
}

std::vector<double> range_or(const std::string& text, const std::string& name, std::vector<double> fallback) {
  if (text.empty()) return fallback;
  return axis_values(parse_axis(name, text));
}

SweepTable single_mode(const Effective& e) {
  const ModePoint m = directional_mode(e.geometry, e.config, e.accel);
  SweepTable t;
  t.columns = {"theta", "kx", "ky", "delta_k", "gamma_k", "eta_re", "eta_im", "shift_error", "propagating_orders"};
  t.add_row({e.geometry.theta, m.k.kx, m.k.ky, m.delta, m.gamma, m.eta.real(), m.eta.imag(), m.shift_error,
             static_cast<double>(m.propagating_orders)},
            m.flags);
  return t;
}

SweepTable diffraction_table(const Effective& e, const std::vector<double>& ds) {
  const DiffractionThreshold th = diffraction_threshold(e.geometry);
  SweepTable t;
  const bool xz = e.geometry.plane == Plane::XZ;
  t.columns = {"d", "propagating_orders", "gamma_k"};
  if (xz) {
    t.columns.push_back("order_xx_re");
    t.columns.push_back("order_xx_im");
  }
  for (double d : ds) {
    const SystemConfig c = e.config.with_lattice_constant(d);
    const DecayRate g = gamma_k(incidence_bloch(e.geometry, c), c);
    std::vector<double> row{d, static_cast<double>(g.propagating_orders), g.value};
    Flags f = g.flags;
    if (xz) {
      const OrderContribution oc = order_contribution_xx(d, e.geometry.theta);
      row.push_back(oc.value.real());
      row.push_back(oc.value.imag());
      f |= oc.flags;
    }
    t.add_row(std::move(row), f);
  }
  t.meta["d_star"] = th.d_star;
  t.meta["order"] = {th.mx, th.my};
  return t;
}

int fail(std::ostream& err, ErrorCode code, const std::string& message) {
  err << "error code=" << to_string(code) << " message=" << message << "\n";
  return is_numerical_failure(code) ? 2 : 1;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Cooperative optical response of a subwavelength atomic array under EIT", "arraymirror"};
  app.require_subcommand(1);
  Settings s;
  std::string path = "GXMG", dp_range = "-40:60:1001", theta_grid, d_grid;
  int samples = 100;
  int criterion = 0;
  std::vector<std::string> axes;

  auto* bands = app.add_subcommand("bands", "band structure along a Brillouin-zone path");
  add_common(bands, s);
  bands->add_option("--path", path, "symmetry-point labels, e.g. GXMG");
  bands->add_option("--samples", samples, "intervals per path segment");

  auto* mode = app.add_subcommand("mode", "directional collective mode");
  add_common(mode, s);
  add_geometry(mode, s);
  mode->add_option("--theta-grid", theta_grid, "sweep theta as min:max:count");
  mode->add_option("--d-grid", d_grid, "sweep d as min:max:count");

  auto* response = app.add_subcommand("response", "EIT susceptibility spectrum");
  add_common(response, s);
  add_geometry(response, s);
  add_drive(response, s);
  response->add_option("--dp", dp_range, "probe detuning grid min:max:count");

  auto* spectra = app.add_subcommand("spectra", "reflection and transmission spectra");
  add_common(spectra, s);
  add_geometry(spectra, s);
  add_drive(spectra, s);
  spectra->add_option("--dp", dp_range, "probe detuning grid min:max:count");
  spectra->add_option("--probe", s.probe, "probe polarization: p or s");

  auto* sweep = app.add_subcommand("sweep", "spectra over one or two parameter axes");
  add_common(sweep, s);
  add_geometry(sweep, s);
  add_drive(sweep, s);
  sweep->add_option("--dp", dp_range, "probe detuning grid min:max:count");
  sweep->add_option("--probe", s.probe, "probe polarization: p or s");
  sweep->add_option("--axis", axes, "NAME=min:max:count with NAME in omega_c, delta_c, theta, d")->required();

  auto* diffraction = app.add_subcommand("diffraction", "diffraction threshold and order analysis");
  add_common(diffraction, s);
  add_geometry(diffraction, s);
  diffraction->add_option("--d-grid", d_grid, "lattice constants min:max:count");

  auto* verify = app.add_subcommand("verify", "run the acceptance checks");
  verify->add_option("--criterion", criterion, "run a single criterion (1-13)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    return fail(err, ErrorCode::InvalidArgument, e.what());
  }

  try {
    if (*verify) {
      bool all = true;
      auto print = [&](const CriterionResult& r) {
        all = all && r.passed;
        out << format_result(r) << "\n" << std::flush;
      };
      if (criterion != 0) {
        print(run_criterion(criterion));
      } else {
        verify_suite(print);
      }
      return all ? 0 : 1;
    }

    const Effective e = resolve(s);
    SweepTable table;
    std::string command;
    if (*bands) {
      command = "bands";
      if (samples < 1) throw Error(ErrorCode::InvalidArgument, "--samples must be at least 1");
      const auto waypoints = path_waypoints(path, e.config);
      table = to_table(band_structure(bz_path(waypoints, samples + 1, e.config), waypoints, e.config, e.accel));
      table.meta["path"] = path;
    } else if (*mode) {
      command = "mode";
      if (!theta_grid.empty() && !d_grid.empty()) {
        throw Error(ErrorCode::InvalidArgument, "use either --theta-grid or --d-grid");
      }
      if (!theta_grid.empty()) {
        table = mode_vs_angle(range_or(theta_grid, "theta", {}), e.geometry.plane, e.config, e.accel);
      } else if (!d_grid.empty()) {
        table = mode_vs_lattice(range_or(d_grid, "d", {}), e.geometry, e.config, e.accel);
      } else {
        table = single_mode(e);
      }
    } else if (*response) {
      command = "response";
      const ModePoint m = directional_mode(e.geometry, e.config, e.accel);
      table = susceptibility_spectrum(range_or(dp_range, "delta_p", {}), make_eit_params(e.drive, m, e.config));
    } else if (*spectra) {
      command = "spectra";
      table = rt_spectrum(range_or(dp_range, "delta_p", {}), e.geometry, e.drive, e.config, e.accel);
    } else if (*sweep) {
      command = "sweep";
      if (axes.size() > 2) throw Error(ErrorCode::InvalidArgument, "at most two --axis options");
      std::vector<SweepAxis> outer;
      for (const auto& a : axes) {
        const auto eq = a.find('=');
        if (eq == std::string::npos) throw Error(ErrorCode::InvalidArgument, "--axis expects NAME=min:max:count");
        const std::string name = a.substr(0, eq);
        outer.push_back({parse_sweep_param(name), axis_values(parse_axis(name, a.substr(eq + 1)))});
      }
      table = spectra_sweep(outer, range_or(dp_range, "delta_p", {}), e.geometry, e.drive, e.config, e.accel);
    } else if (*diffraction) {
      command = "diffraction";
      table = diffraction_table(e, range_or(d_grid, "d", default_lattice_grid()));
    }
    nlohmann::ordered_json extra = table.meta;
    echo(table, e, command);
    for (auto it = extra.begin(); it != extra.end(); ++it) {
      if (!table.meta.contains(it.key())) table.meta[it.key()] = it.value();
    }
    emit(table, s, out);
    return 0;
  } catch (const Error& ex) {
    return fail(err, ex.code(), ex.what());
  } catch (const std::exception& ex) {
    return fail(err, ErrorCode::InvalidArgument, ex.what());
  }
}

int run(int argc, char** argv) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(args, std::cout, std::cerr);
}

}  // namespace arraymirror
