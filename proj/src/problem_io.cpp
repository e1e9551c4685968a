#include "pit/problem_io.hpp"

#include <array>
#include <bit>
#include <cstring>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace pit {

namespace {

using nlohmann::json;

constexpr std::string_view kAlphabet =
    "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789+/";

int decode_char(char ch) {
  if (ch >= 'A' && ch <= 'Z') return ch - 'A';
  if (ch >= 'a' && ch <= 'z') return ch - 'a' + 26;
  if (ch >= '0' && ch <= '9') return ch - '0' + 52;
  if (ch == '+') return 62;
  if (ch == '/') return 63;
  return -1;
}

std::uint32_t to_little_endian(std::uint32_t bits) {
  if constexpr (std::endian::native == std::endian::big) {
    return ((bits & 0xffu) << 24) | ((bits & 0xff00u) << 8) | ((bits >> 8) & 0xff00u) | (bits >> 24);
  }
  return bits;
}

}  // namespace

std::string base64_encode(std::string_view bytes) {
  std::string out;
  out.reserve((bytes.size() + 2) / 3 * 4);
  std::size_t i = 0;
  for (; i + 2 < bytes.size(); i += 3) {
    const std::uint32_t v = (std::uint32_t(std::uint8_t(bytes[i])) << 16) |
                            (std::uint32_t(std::uint8_t(bytes[i + 1])) << 8) |
                            std::uint32_t(std::uint8_t(bytes[i + 2]));
    out += kAlphabet[(v >> 18) & 63];
    out += kAlphabet[(v >> 12) & 63];
    out += kAlphabet[(v >> 6) & 63];
    out += kAlphabet[v & 63];
  }
  const std::size_t rest = bytes.size() - i;
  if (rest > 0) {
    std::uint32_t v = std::uint32_t(std::uint8_t(bytes[i])) << 16;
    if (rest == 2) v |= std::uint32_t(std::uint8_t(bytes[i + 1])) << 8;
    out += kAlphabet[(v >> 18) & 63];
    out += kAlphabet[(v >> 12) & 63];
    out += rest == 2 ? kAlphabet[(v >> 6) & 63] : '=';
    out += '=';
  }
  return out;
}

std::string base64_decode(std::string_view text) {
  std::string out;
  out.reserve(text.size() / 4 * 3);
  std::uint32_t buffer = 0;
  int bits = 0;
  std::size_t padding = 0;
  for (char ch : text) {
    if (ch == '=') {
      ++padding;
      continue;
    }
    if (ch == '\n' || ch == '\r' || ch == ' ') continue;
    const int value = decode_char(ch);
    if (value < 0 || padding > 0) throw InvalidParams("invalid base64 input");
    buffer = (buffer << 6) | static_cast<std::uint32_t>(value);
    bits += 6;
    if (bits >= 8) {
      bits -= 8;
      out += static_cast<char>((buffer >> bits) & 0xffu);
    }
  }
  if (padding > 2) throw InvalidParams("invalid base64 padding");
  return out;
}

std::string encode_signals(const SignalMatrix& signals) {
  std::string bytes(signals.data().size() * 4, '\0');
  std::size_t offset = 0;
  for (double x : signals.data()) {
    const std::uint32_t bits = to_little_endian(std::bit_cast<std::uint32_t>(static_cast<float>(x)));
    std::memcpy(bytes.data() + offset, &bits, 4);
    offset += 4;
  }
  return base64_encode(bytes);
}

SignalMatrix decode_signals(std::string_view base64, std::size_t num_samples,
                            std::size_t num_columns) {
  const std::string bytes = base64_decode(base64);
  if (bytes.size() != num_samples * num_columns * 4) {
    throw InvalidParams("signal block holds " + std::to_string(bytes.size()) + " bytes, expected " +
                        std::to_string(num_samples * num_columns * 4));
  }
  std::vector<double> data(num_samples * num_columns);
  for (std::size_t i = 0; i < data.size(); ++i) {
    std::uint32_t bits;
    std::memcpy(&bits, bytes.data() + 4 * i, 4);
    data[i] = static_cast<double>(std::bit_cast<float>(to_little_endian(bits)));
  }
  return SignalMatrix(num_samples, num_columns, std::move(data));
}

std::vector<int> Problem::to_file_order(const Assignment& assignment) const {
  std::vector<int> out(assignment.size());
  for (std::size_t k = 0; k < assignment.size(); ++k) out[order.at(k)] = assignment[k];
  return out;
}

Problem parse_problem(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw InvalidParams(std::string("problem file is not valid JSON: ") + e.what());
  }
  try {
    Problem problem;
    const auto total_length = doc.at("total_length").get<std::int64_t>();
    std::vector<Interval> intervals;
    for (const auto& pair : doc.at("intervals")) {
      if (!pair.is_array() || pair.size() != 2) throw InvalidParams("intervals must be [start, end] pairs");
      intervals.emplace_back(pair[0].get<std::int64_t>(), pair[1].get<std::int64_t>());
    }
    auto canonical = UtteranceLayout::canonicalize(std::move(intervals), total_length);
    problem.layout = std::move(canonical.layout);
    problem.order = std::move(canonical.order);
    problem.num_channels = doc.at("num_channels").get<int>();
    if (problem.num_channels < 1) throw InvalidParams("num_channels must be positive");

    const std::size_t num_utterances = problem.layout.size();
    const auto channels = static_cast<std::size_t>(problem.num_channels);
    const auto num_samples = static_cast<std::size_t>(total_length);

    if (doc.contains("score_matrix")) {
      const auto& rows = doc.at("score_matrix");
      if (!rows.is_array() || rows.size() != channels) {
        throw InvalidParams("score_matrix must have num_channels rows");
      }
      std::vector<double> values(channels * num_utterances);
      for (std::size_t c = 0; c < channels; ++c) {
        if (!rows[c].is_array() || rows[c].size() != num_utterances) {
          throw InvalidParams("score_matrix row " + std::to_string(c) + " must have one entry per utterance");
        }
        for (std::size_t k = 0; k < num_utterances; ++k) {
          values[c * num_utterances + k] = rows[c][problem.order[k]].get<double>();
        }
      }
      problem.scores = ScoreMatrix(channels, num_utterances, std::move(values));
    }
    if (doc.contains("targets") != doc.contains("estimates")) {
      throw InvalidParams("targets and estimates must be given together");
    }
    if (doc.contains("targets")) {
      const SignalMatrix targets =
          decode_signals(doc.at("targets").get<std::string>(), num_samples, num_utterances);
      problem.targets = targets.select_columns(problem.order);
      problem.estimates =
          decode_signals(doc.at("estimates").get<std::string>(), num_samples, channels);
    }
    if (!problem.scores && !problem.targets) {
      throw InvalidParams("problem needs either score_matrix or targets/estimates");
    }
    return problem;
  } catch (const json::exception& e) {
    throw InvalidParams(std::string("malformed problem file: ") + e.what());
  }
}

Problem load_problem(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open problem file " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_problem(buffer.str());
}

std::string serialize_problem(const Problem& problem, bool include_edges) {
  json doc;
  doc["total_length"] = problem.layout.total_length();
  json intervals = json::array();
  for (const Interval& iv : problem.layout.intervals()) intervals.push_back({iv.start, iv.end});
  doc["intervals"] = std::move(intervals);
  doc["num_channels"] = problem.num_channels;
  if (problem.scores) {
    json rows = json::array();
    for (std::size_t c = 0; c < problem.scores->rows(); ++c) {
      json row = json::array();
      for (std::size_t u = 0; u < problem.scores->cols(); ++u) row.push_back((*problem.scores)(c, u));
      rows.push_back(std::move(row));
    }
    doc["score_matrix"] = std::move(rows);
  }
  if (problem.targets && problem.estimates) {
    doc["targets"] = encode_signals(*problem.targets);
    doc["estimates"] = encode_signals(*problem.estimates);
  }
  if (include_edges) {
    json edges = json::array();
    const OverlapGraph graph = build_overlap_graph(problem.layout);
    for (auto [u, v] : graph.edges()) edges.push_back({u, v});
    doc["edges"] = std::move(edges);
  }
  return doc.dump();
}

}  // namespace pit
