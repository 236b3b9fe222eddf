#include <cstdio>
#include <fstream>
#include <string>

#include "json.hpp"
#include "subseq/learning.hpp"

namespace subseq {

namespace {

using nlohmann::json;

constexpr std::uint64_t kFnvOffset = 0xCBF29CE484222325ULL;
constexpr std::uint64_t kFnvPrime = 0x100000001B3ULL;

void fnv_absorb(std::uint64_t& h, std::string_view text) {
  for (unsigned char c : text) {
    h ^= c;
    h *= kFnvPrime;
  }
}

void fnv_absorb_u64(std::uint64_t& h, std::uint64_t v) {
  char buf[24];
  std::snprintf(buf, sizeof(buf), "%llu,", static_cast<unsigned long long>(v));
  fnv_absorb(h, buf);
}

json matrix_to_json(const CountMatrix& mat) {
  json j;
  j["rows"] = mat.rows();
  j["cols"] = mat.cols();
  j["data"] = mat.data();
  return j;
}

CountMatrix matrix_from_json(const json& j, std::size_t expect_rows) {
  if (!j.is_object() || !j.contains("rows") || !j.contains("cols") ||
      !j.contains("data"))
    throw FormatError("malformed matrix object in model file");
  const auto rows = j.at("rows").get<std::size_t>();
  const auto cols = j.at("cols").get<std::size_t>();
  const auto& data = j.at("data");
  if (!data.is_array() || data.size() != rows * cols)
    throw FormatError("matrix data size mismatch in model file");
  if (rows != expect_rows)
    throw FormatError("matrix row count does not match alphabet size");
  CountMatrix mat(rows, cols);
  for (std::size_t k = 0; k < data.size(); ++k) {
    const auto& cell = data[k];
    if (!cell.is_number_integer() ||
        (!cell.is_number_unsigned() && cell.get<std::int64_t>() < 0))
      throw FormatError("model counts must be nonnegative integers");
    mat.data()[k] = cell.get<std::uint64_t>();
  }
  return mat;
}

}  // namespace

std::string RecognitionModel::checksum() const {
  std::uint64_t h = kFnvOffset;
  for (const auto& s : alphabet.symbols()) {
    fnv_absorb(h, s);
    fnv_absorb(h, "|");
  }
  fnv_absorb_u64(h, vocab_size);
  for (const auto& [n, mat] : phi.by_len) {
    fnv_absorb(h, "P");
    fnv_absorb_u64(h, n);
    for (std::uint64_t v : mat.data()) fnv_absorb_u64(h, v);
  }
  for (const auto& [n, mats] : psi.by_len) {
    for (std::size_t m = 1; m <= mats.size(); ++m) {
      fnv_absorb(h, "S");
      fnv_absorb_u64(h, n);
      fnv_absorb_u64(h, m);
      for (std::uint64_t v : mats[m - 1].data()) fnv_absorb_u64(h, v);
    }
  }
  char buf[20];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(h));
  return buf;
}

void save_model(const RecognitionModel& model,
                const std::filesystem::path& path) {
  model.require_finalized();
  json j;
  j["format_version"] = model.format_version;
  j["label"] = model.label;
  j["alphabet"] = model.alphabet.symbols();
  j["prior"] = model.prior;
  j["vocab_size"] = model.vocab_size;
  json phi = json::object();
  for (const auto& [n, mat] : model.phi.by_len)
    phi[std::to_string(n)] = matrix_to_json(mat);
  j["phi"] = std::move(phi);
  json psi = json::object();
  for (const auto& [n, mats] : model.psi.by_len)
    for (std::size_t m = 1; m <= mats.size(); ++m)
      psi[std::to_string(n) + "," + std::to_string(m)] =
          matrix_to_json(mats[m - 1]);
  j["psi"] = std::move(psi);
  j["checksum"] = model.checksum();

  std::ofstream out(path);
  if (!out) throw Error("cannot write model file " + path.string());
  out << j.dump(2) << '\n';
  if (!out) throw Error("write failed for " + path.string());
}

RecognitionModel load_model(const std::filesystem::path& path, LoadMode mode) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open model file " + path.string());
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw FormatError("malformed model file " + path.string() + ": " +
                      e.what());
  }

  if (!j.contains("format_version") || !j.at("format_version").is_number_integer())
    throw FormatError("model file missing format_version");
  const int version = j.at("format_version").get<int>();
  if (version != kModelFormatVersion)
    throw FormatError("unsupported model format_version " +
                      std::to_string(version));

  for (const char* field : {"label", "alphabet", "prior", "vocab_size", "phi",
                            "psi", "checksum"})
    if (!j.contains(field))
      throw FormatError(std::string("model file missing field '") + field +
                        "'");

  RecognitionModel model;
  model.format_version = version;
  model.label = j.at("label").get<std::string>();
  model.alphabet = Alphabet(j.at("alphabet").get<std::vector<std::string>>());
  model.prior = j.at("prior").get<double>();
  model.vocab_size = j.at("vocab_size").get<std::uint64_t>();
  model.phi.alphabet_size = model.alphabet.size();
  model.psi.alphabet_size = model.alphabet.size();

  for (const auto& [key, value] : j.at("phi").items()) {
    const std::size_t n = std::stoull(key);
    CountMatrix mat = matrix_from_json(value, model.alphabet.size());
    if (mat.cols() != n)
      throw FormatError("phi matrix for length " + key + " has wrong width");
    model.phi.by_len.emplace(n, std::move(mat));
  }
  for (const auto& [key, value] : j.at("psi").items()) {
    const auto comma = key.find(',');
    if (comma == std::string::npos)
      throw FormatError("bad psi key '" + key + "' in model file");
    const std::size_t n = std::stoull(key.substr(0, comma));
    const std::size_t m = std::stoull(key.substr(comma + 1));
    if (m < 1 || m > n) throw FormatError("bad psi key '" + key + "'");
    CountMatrix mat = matrix_from_json(value, model.alphabet.size());
    if (mat.cols() != m)
      throw FormatError("psi matrix " + key + " has wrong width");
    auto& family = model.psi.by_len[n];
    if (family.size() < n) family.resize(n);
    family[m - 1] = std::move(mat);
  }
  // Every (n,m) slot must be present for stored lengths.
  for (const auto& [n, mats] : model.psi.by_len)
    for (std::size_t m = 1; m <= mats.size(); ++m)
      if (mats[m - 1].rows() == 0)
        throw FormatError("model file lacks psi matrix " + std::to_string(n) +
                          "," + std::to_string(m));

  const std::string expected = j.at("checksum").get<std::string>();
  if (model.checksum() != expected)
    throw FormatError("model checksum mismatch in " + path.string());

  if (mode == LoadMode::strict) {
    std::uint64_t total = 0;
    for (const auto& [n, mat] : model.phi.by_len)
      total = checked_add(total, model.phi.words_of_length(n));
    if (total != model.vocab_size)
      throw FormatError("model vocab_size inconsistent with phi counts");
    AlphaTable alpha(model.max_len());
    SubsequenceHistogram derived = learn_subsequence(model.phi, alpha);
    if (!(derived.by_len == model.psi.by_len))
      throw FormatError(
          "model psi is not consistent with phi (strict-mode check)");
  }
  return model;
}

}  // namespace subseq
