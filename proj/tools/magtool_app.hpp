#pragma once

// Command-line front end. run_magtool() holds all behavior so it can be driven
// in-process; magtool.cpp only forwards argv and the standard streams.
//
// Exit codes: 0 success, 1 IO, 2 usage or malformed input, 3 domain violation.

#include <cstdint>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "mag/mag.hpp"

namespace magtool {

enum ExitCode : int { kOk = 0, kIo = 1, kUsage = 2, kDomain = 3 };

class IoFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline std::vector<std::uint8_t> read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoFailure("cannot open " + path);
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  if (in.bad()) throw IoFailure("cannot read " + path);
  return bytes;
}

inline void write_file(const std::string& path, std::string_view data) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoFailure("cannot open " + path + " for writing");
  out.write(data.data(), static_cast<std::streamsize>(data.size()));
  if (!out) throw IoFailure("cannot write " + path);
}

inline void write_file(const std::string& path, const std::vector<std::uint8_t>& data) {
  write_file(path, std::string_view(reinterpret_cast<const char*>(data.data()), data.size()));
}

inline bool has_extension(const std::string& path, std::string_view ext) {
  return std::filesystem::path(path).extension() == ext;
}

// .mcs is recognized by its magic; anything else is parsed as .magt text.
inline mag::SimpleMag load_mag(const std::string& path) {
  const auto bytes = read_file(path);
  if (bytes.size() >= 4 && std::string_view(reinterpret_cast<const char*>(bytes.data()), 4) ==
                               mag::kMcsMagic)
    return mag::read_mcs(bytes);
  if (has_extension(path, ".mcs")) return mag::read_mcs(bytes);
  return mag::read_magt(std::string_view(reinterpret_cast<const char*>(bytes.data()), bytes.size()));
}

inline std::string edge_line(const mag::CompositeEdge& e) {
  std::string s = "e";
  for (auto c : e.u.coords) s += ' ' + std::to_string(c);
  for (auto c : e.v.coords) s += ' ' + std::to_string(c);
  return s;
}

inline int exit_code_for(mag::ErrorKind kind) {
  switch (kind) {
    case mag::ErrorKind::NotSnapshot:
    case mag::ErrorKind::NotIntervalRestricted:
      return kDomain;
    case mag::ErrorKind::Adapter:
      return kIo;
    default:
      return kUsage;
  }
}

inline void report_error(std::ostream& err, std::string_view kind, const std::string& message,
                         int code, std::optional<std::string> edge = std::nullopt) {
  nlohmann::json j{{"error", kind}, {"message", message}, {"exitCode", code}};
  if (edge) j["edge"] = *edge;
  err << j.dump() << '\n';
}

inline std::vector<mag::Index> parse_aspects(const std::string& text) {
  std::vector<mag::Index> sizes;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    unsigned long long v = 0;
    try {
      v = std::stoull(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != item.size() || item.find('-') != std::string::npos)
      throw mag::Error(mag::ErrorKind::Argument, "bad aspect size \"" + item + "\"");
    sizes.push_back(v);
  }
  return sizes;
}

inline std::pair<std::uint64_t, std::uint64_t> parse_fraction(const std::string& text) {
  const auto slash = text.find('/');
  try {
    std::size_t used = 0;
    if (slash == std::string::npos) throw std::invalid_argument("no slash");
    const std::string num = text.substr(0, slash);
    const std::string den = text.substr(slash + 1);
    if (num.find('-') != std::string::npos || den.find('-') != std::string::npos)
      throw std::invalid_argument("negative");
    const auto n = std::stoull(num, &used);
    if (used != num.size()) throw std::invalid_argument("trailing");
    const auto d = std::stoull(den, &used);
    if (used != den.size()) throw std::invalid_argument("trailing");
    return {n, d};
  } catch (const std::exception&) {
    throw mag::Error(mag::ErrorKind::Argument,
                     "edge probability must look like NUM/DEN, got \"" + text + "\"");
  }
}

inline std::string render_text(const nlohmann::json& j, const std::string& prefix = "") {
  std::string out;
  for (auto it = j.begin(); it != j.end(); ++it) {
    const std::string key = prefix.empty() ? it.key() : prefix + "." + it.key();
    if (it->is_object())
      out += render_text(*it, key);
    else
      out += key + ": " + it->dump() + "\n";
  }
  return out;
}

struct Options {
  std::optional<std::uint64_t> seed;
  std::string format = "json";
  std::string out;

  std::string aspects;
  std::string p_edge = "1/2";
  bool spatial = false;

  std::string input;
  std::string second_input;
  bool strip = false;
  bool couplings = false;
  std::size_t aspect = 2;
  std::string compressor = "deflate";
  mag::Index vertices = 0;
  mag::Index times = 0;
};

inline void emit_report(const Options& o, const nlohmann::json& j, std::ostream& out) {
  const std::string text = o.format == "text" ? render_text(j) : j.dump(2) + "\n";
  if (o.out.empty())
    out << text;
  else
    write_file(o.out, text);
}

inline const std::string& require_out(const Options& o) {
  if (o.out.empty()) throw mag::Error(mag::ErrorKind::Argument, "missing output path (-o)");
  return o.out;
}

inline int run_magtool(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Multiaspect graph toolkit: characteristic strings, snapshot codec, analyzers"};
  app.name("magtool");
  app.fallthrough();
  app.require_subcommand(1);

  Options o;
  app.add_option("--seed", o.seed, "64-bit generator seed");
  app.add_option("--format", o.format, "report format")->check(CLI::IsMember({"json", "text"}));
  app.add_option("-o,--out", o.out, "output path");

  auto* gen = app.add_subcommand("gen", "generate a seeded uniform-random MAG (.mcs)");
  gen->add_option("--aspects", o.aspects, "aspect sizes n1,...,np")->required();
  gen->add_option("--p-edge", o.p_edge, "edge probability NUM/DEN");
  gen->add_flag("--spatial", o.spatial, "only spatial edge positions (order 2)");

  auto* enc = app.add_subcommand("encode-snapshot", "encode a spatial TVG (.mcs -> .msc)");
  enc->add_option("input", o.input, "input .mcs")->required();
  enc->add_flag("--strip", o.strip, "drop non-spatial edges instead of failing");
  enc->add_flag("--couplings", o.couplings, "treat sequential couplings as implied");

  auto* dec = app.add_subcommand("decode-snapshot", "decode a snapshot payload (.msc -> .mcs)");
  dec->add_option("input", o.input, "input .msc")->required();

  auto* analyze = app.add_subcommand("analyze", "topological report");
  analyze->add_option("input", o.input, "input .mcs or .magt")->required();
  analyze->add_option("--aspect", o.aspect, "aspect for the non-sequential reachability check");

  auto* compare = app.add_subcommand("compare-info", "compressed-size comparison");
  compare->add_option("general", o.input, "general MAG")->required();
  compare->add_option("spatial", o.second_input, "snapshot-like MAG")->required();
  compare->add_option("--compressor", o.compressor, "compressor adapter");

  auto* gap = app.add_subcommand("info-gap", "theoretical position gap");
  gap->add_option("--vertices", o.vertices, "|V|")->required();
  gap->add_option("--times", o.times, "|T| or |L|")->required();

  auto* convert = app.add_subcommand("convert", "convert between .mcs and .magt");
  convert->add_option("input", o.input, "input .mcs or .magt")->required();

  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    report_error(err, "usage", e.what(), kUsage);
    return kUsage;
  }

  try {
    if (gen->parsed()) {
      if (!o.seed) throw mag::Error(mag::ErrorKind::Argument, "gen requires --seed");
      const auto [num, den] = parse_fraction(o.p_edge);
      mag::GenSpec spec{mag::CompanionTuple(parse_aspects(o.aspects)), num, den, *o.seed,
                        o.spatial};
      write_file(require_out(o), mag::write_mcs(mag::generate(spec)));
    } else if (enc->parsed()) {
      const auto& path = require_out(o);
      const auto g = mag::read_mcs(read_file(o.input));
      const auto payload = mag::encode_snapshot(
          g, {.strip_non_spatial = o.strip, .implied_couplings = o.couplings});
      write_file(path, mag::write_msc(payload));
    } else if (dec->parsed()) {
      const auto& path = require_out(o);
      write_file(path, mag::write_mcs(mag::decode_snapshot(mag::read_msc(read_file(o.input)))));
    } else if (analyze->parsed()) {
      const auto g = load_mag(o.input);
      emit_report(o, mag::to_json(mag::build_topo_report(g, o.aspect)), out);
    } else if (compare->parsed()) {
      const auto adapter = mag::make_adapter(o.compressor);
      const auto general = load_mag(o.input);
      const auto spatial = load_mag(o.second_input);
      emit_report(o, mag::to_json(mag::compare_info(general, spatial, *adapter)), out);
    } else if (gap->parsed()) {
      emit_report(o, mag::to_json(mag::compute_gap(o.vertices, o.times)), out);
    } else if (convert->parsed()) {
      const auto& path = require_out(o);
      const auto g = load_mag(o.input);
      if (has_extension(path, ".mcs"))
        write_file(path, mag::write_mcs(g));
      else if (has_extension(path, ".magt"))
        write_file(path, mag::write_magt(g));
      else
        throw mag::Error(mag::ErrorKind::Argument, "output must end in .mcs or .magt");
    }
  } catch (const mag::SnapshotViolation& e) {
    report_error(err, mag::to_string(e.kind()), e.what(), kDomain, edge_line(e.edge()));
    err << edge_line(e.edge()) << '\n';
    return kDomain;
  } catch (const mag::Error& e) {
    const int code = exit_code_for(e.kind());
    report_error(err, mag::to_string(e.kind()), e.what(), code);
    return code;
  } catch (const IoFailure& e) {
    report_error(err, "io", e.what(), kIo);
    return kIo;
  }
  return kOk;
}

}  // namespace magtool
