#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <iostream>

#include "gpee/codec.hpp"
#include "gpee/errors.hpp"
#include "gpee/sweep.hpp"
#include "gpee/synth.hpp"
#include "gpee/tensor_gate.hpp"

namespace {

int exit_code_for(gpee::Errc code) {
  switch (code) {
    case gpee::Errc::CapacityUnreachable:
    case gpee::Errc::ImageTooSmall:
    case gpee::Errc::ThresholdDeltaOverflow:
      return 2;
    case gpee::Errc::MalformedStego:
      return 3;
    case gpee::Errc::IoFailure:
    case gpee::Errc::MalformedPgm:
    case gpee::Errc::MaxvalUnsupported:
      return 4;
    default:
      return 1;
  }
}

struct SolverFlags {
  double gamma = 0.5, rho = 5.0, step = 0.1, sigma_l = 0.5, sigma_x = 0.5;
  int window = 31;
  std::string predictor = "quad";

  void attach(CLI::App* cmd, bool with_predictor = true) {
    if (with_predictor)
      cmd->add_option("--predictor", predictor, "quad|gtv|rhombus")->default_val("quad");
    cmd->add_option("--gamma", gamma, "prior tradeoff weight")->default_val(0.5);
    cmd->add_option("--rho", rho, "ADMM penalty")->default_val(5.0);
    cmd->add_option("--step", step, "proximal-gradient step size")->default_val(0.1);
    cmd->add_option("--sigma-l", sigma_l, "location kernel width")->default_val(0.5);
    cmd->add_option("--sigma-x", sigma_x, "intensity kernel width")->default_val(0.5);
    cmd->add_option("--window", window, "search window side length (odd)")->default_val(31);
  }

  gpee::PredictorParams params() const {
    if (window < 3 || window % 2 == 0)
      throw gpee::Error(gpee::Errc::InvalidArgument, "--window must be odd and >= 3");
    gpee::PredictorParams p;
    p.gamma = gamma;
    p.rho = rho;
    p.step_t = step;
    p.sigma_l = sigma_l;
    p.sigma_x = sigma_x;
    p.window_radius = (window - 1) / 2;
    return p;
  }
};

std::vector<std::uint8_t> read_file_bytes(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw gpee::Error(gpee::Errc::IoFailure, "cannot open '" + path + "'");
  return std::vector<std::uint8_t>(std::istreambuf_iterator<char>(in), {});
}

void write_file_bytes(const std::string& path, const std::vector<std::uint8_t>& bytes) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw gpee::Error(gpee::Errc::IoFailure, "cannot open '" + path + "' for writing");
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw gpee::Error(gpee::Errc::IoFailure, "write failed for '" + path + "'");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Reversible data hiding with graph-based pixel prediction"};
  app.require_subcommand(1);

  // embed
  auto* embed_cmd = app.add_subcommand("embed", "embed a message into a cover image");
  std::string in_path, out_path, msg_path;
  std::size_t msg_bits = 0;
  std::uint32_t seed = 1;
  SolverFlags embed_flags;
  embed_cmd->add_option("--in", in_path, "cover PGM")->required();
  embed_cmd->add_option("--out", out_path, "stego PGM")->required();
  auto* msg_opt = embed_cmd->add_option("--msg", msg_path, "message file (bytes, MSB-first)");
  auto* bits_opt =
      embed_cmd->add_option("--msg-bits", msg_bits, "generate this many seeded random bits");
  embed_cmd->add_option("--seed", seed, "seed for --msg-bits")->default_val(1);
  msg_opt->excludes(bits_opt);
  embed_flags.attach(embed_cmd);

  // extract
  auto* extract_cmd = app.add_subcommand("extract", "recover message and cover from a stego image");
  std::string x_in, x_out, x_msg_out;
  SolverFlags extract_flags;
  extract_cmd->add_option("--in", x_in, "stego PGM")->required();
  extract_cmd->add_option("--out", x_out, "restored cover PGM")->required();
  extract_cmd->add_option("--msg-out", x_msg_out, "recovered message file")->required();
  extract_flags.attach(extract_cmd);

  // sweep
  auto* sweep_cmd = app.add_subcommand("sweep", "capacity-distortion sweep to CSV");
  std::string cfg_path, csv_path;
  sweep_cmd->add_option("--config", cfg_path, "key = value sweep description")->required();
  sweep_cmd->add_option("--out", csv_path, "output CSV path")->required();

  // gen (convenience: the repo ships no image corpus)
  auto* gen_cmd = app.add_subcommand("gen", "write a deterministic synthetic test image");
  std::string g_out, g_kind = "ramps";
  int g_w = 512, g_h = 512;
  std::uint32_t g_seed = 1;
  gen_cmd->add_option("--out", g_out, "output PGM")->required();
  gen_cmd->add_option("--kind", g_kind, "ramps|waves|blobs")->default_val("ramps");
  gen_cmd->add_option("--width", g_w)->default_val(512);
  gen_cmd->add_option("--height", g_h)->default_val(512);
  gen_cmd->add_option("--seed", g_seed)->default_val(1);

  CLI11_PARSE(app, argc, argv);

  try {
    if (embed_cmd->parsed()) {
      gpee::GrayImage cover = gpee::load_pgm(in_path);
      gpee::BitStream message;
      if (!msg_path.empty()) {
        std::vector<std::uint8_t> bytes = read_file_bytes(msg_path);
        message = gpee::BitStream::from_bytes(bytes, bytes.size() * 8);
      } else if (bits_opt->count() > 0) {
        message = gpee::BitStream(gpee::random_bits(msg_bits, seed));
      } else {
        std::cerr << "embed: need --msg or --msg-bits\n";
        return 1;
      }
      gpee::EmbedReport report;
      gpee::GrayImage stego = gpee::embed(cover, message,
                                          gpee::predictor_from_name(embed_flags.predictor),
                                          embed_flags.params(), &report);
      gpee::save_pgm(stego, out_path);
      std::printf("embedded %zu bits, psnr %.4f dB, tau", message.size(), report.psnr_db);
      for (int l = 0; l < 4; ++l) std::printf(" %.2f", gpee::tau_from_code(report.tau_codes[l]));
      std::printf("\n");
    } else if (extract_cmd->parsed()) {
      gpee::GrayImage stego = gpee::load_pgm(x_in);
      gpee::ExtractResult result =
          gpee::extract(stego, gpee::predictor_from_name(extract_flags.predictor),
                        extract_flags.params());
      gpee::save_pgm(result.restored, x_out);
      write_file_bytes(x_msg_out, result.message.to_bytes());
      std::printf("recovered %zu bits\n", result.message.size());
    } else if (sweep_cmd->parsed()) {
      gpee::SweepConfig cfg = gpee::parse_sweep_config(cfg_path);
      std::vector<gpee::SweepRow> rows = gpee::run_sweep(cfg);
      gpee::write_sweep_csv(cfg, rows, csv_path);
      std::size_t ok = 0;
      for (const auto& r : rows) ok += r.ok ? 1 : 0;
      std::printf("%zu/%zu rows verified, csv written to %s\n", ok, rows.size(), csv_path.c_str());
      for (const auto& r : rows)
        if (!r.ok) std::fprintf(stderr, "row %s/%s/%zu failed: %s\n", r.image.c_str(),
                                r.predictor.c_str(), r.capacity_bits, r.error.c_str());
    } else if (gen_cmd->parsed()) {
      gpee::save_pgm(gpee::make_test_image(g_kind, g_w, g_h, g_seed), g_out);
    }
  } catch (const gpee::Error& e) {
    std::cerr << gpee::errc_name(e.code()) << ": " << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
