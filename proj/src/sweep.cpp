#include "gpee/sweep.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "gpee/errors.hpp"
#include "gpee/synth.hpp"
#include "gpee/tensor_gate.hpp"

namespace gpee {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r\n");
  std::size_t e = s.find_last_not_of(" \t\r\n");
  return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::string format_double(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", digits, v);
  return buf;
}

}  // namespace

std::uint32_t row_seed(std::uint32_t master_seed, std::size_t row_index) {
  return master_seed + static_cast<std::uint32_t>(row_index) * 2654435761u;
}

SweepConfig parse_sweep_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::IoFailure, "cannot open sweep config '" + path + "'");
  SweepConfig cfg;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    std::size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw Error(Errc::InvalidArgument,
                  "sweep config line " + std::to_string(lineno) + ": expected key = value");
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    try {
      if (key == "images") {
        cfg.images = split_list(value);
      } else if (key == "predictors") {
        for (const auto& name : split_list(value)) cfg.predictors.push_back(predictor_from_name(name));
      } else if (key == "capacities") {
        for (const auto& item : split_list(value)) cfg.capacities.push_back(std::stoull(item));
      } else if (key == "seed") {
        cfg.seed = static_cast<std::uint32_t>(std::stoul(value));
      } else if (key == "gamma") {
        cfg.params.gamma = std::stod(value);
      } else if (key == "rho") {
        cfg.params.rho = std::stod(value);
      } else if (key == "step") {
        cfg.params.step_t = std::stod(value);
      } else if (key == "sigma_l") {
        cfg.params.sigma_l = std::stod(value);
      } else if (key == "sigma_x") {
        cfg.params.sigma_x = std::stod(value);
      } else if (key == "window") {
        int w = std::stoi(value);
        if (w < 3 || w % 2 == 0) throw Error(Errc::InvalidArgument, "window must be odd and >= 3");
        cfg.params.window_radius = (w - 1) / 2;
      } else {
        throw Error(Errc::InvalidArgument, "unknown sweep config key '" + key + "'");
      }
    } catch (const Error&) {
      throw;
    } catch (const std::exception&) {
      throw Error(Errc::InvalidArgument,
                  "sweep config line " + std::to_string(lineno) + ": bad value '" + value + "'");
    }
  }
  if (cfg.predictors.empty()) throw Error(Errc::InvalidArgument, "sweep config needs predictors");
  for (std::size_t i = 1; i < cfg.capacities.size(); ++i)
    if (cfg.capacities[i] <= cfg.capacities[i - 1])
      throw Error(Errc::InvalidArgument, "capacities must be strictly increasing");
  return cfg;
}

std::vector<SweepRow> run_sweep(const SweepConfig& cfg) {
  std::vector<SweepRow> rows;
  std::size_t row_index = 0;
  for (const std::string& path : cfg.images) {
    GrayImage cover = load_pgm(path);
    std::string name = path;
    std::size_t slash = name.find_last_of('/');
    if (slash != std::string::npos) name = name.substr(slash + 1);
    for (PredictorKind kind : cfg.predictors) {
      for (std::size_t capacity : cfg.capacities) {
        SweepRow row;
        row.image = name;
        row.predictor = predictor_name(kind);
        row.capacity_bits = capacity;
        BitStream message(random_bits(capacity, row_seed(cfg.seed, row_index)));
        auto t0 = std::chrono::steady_clock::now();
        try {
          EmbedReport rep;
          GrayImage stego = embed(cover, message, kind, cfg.params, &rep);
          ExtractResult back = extract(stego, kind, cfg.params);
          if (!(back.restored == cover)) throw Error(Errc::MalformedStego, "cover mismatch");
          if (!(back.message == message)) throw Error(Errc::MalformedStego, "message mismatch");
          row.psnr_db = rep.psnr_db;
          row.tau_codes = rep.tau_codes;
          row.ok = true;
        } catch (const Error& e) {
          row.ok = false;
          row.error = errc_name(e.code());
        }
        row.seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        rows.push_back(row);
        ++row_index;
      }
    }
  }
  return rows;
}

std::string sweep_csv(const SweepConfig& cfg, const std::vector<SweepRow>& rows) {
  std::ostringstream out;
  out << "# seed=" << cfg.seed << "\n";
  out << "image,predictor,capacity_bits,psnr_db,tau1,tau2,tau3,tau4,seconds,ok\n";
  for (const SweepRow& row : rows) {
    out << row.image << ',' << row.predictor << ',' << row.capacity_bits << ',';
    if (row.ok)
      out << format_double(row.psnr_db, 4);
    else
      out << row.error;
    for (int l = 0; l < 4; ++l) out << ',' << format_double(tau_from_code(row.tau_codes[l]), 2);
    out << ',' << format_double(row.seconds, 3) << ',' << (row.ok ? "true" : "false") << "\n";
  }
  return out.str();
}

void write_sweep_csv(const SweepConfig& cfg, const std::vector<SweepRow>& rows,
                     const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(Errc::IoFailure, "cannot open '" + path + "' for writing");
  out << sweep_csv(cfg, rows);
  if (!out) throw Error(Errc::IoFailure, "write failed for '" + path + "'");
}

}  // namespace gpee
