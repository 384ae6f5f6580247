#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "qasa/ising.hpp"

namespace qasa {

inline constexpr std::size_t kDefaultDegree = 6;

struct CorpusInstance {
  std::string id;
  std::uint64_t seed = 0;
  IsingProblem problem;
  GroundTruth truth;
};

struct CorpusManifest {
  std::vector<std::size_t> sizes;
  std::size_t count_per_size = 0;
  std::size_t degree = kDefaultDegree;
  std::uint64_t seed = 0;
};

struct Corpus {
  CorpusManifest manifest;
  std::vector<CorpusInstance> instances;  // by size, then index

  const CorpusInstance* find(std::string_view id) const;
};

/// "n10_i007" style identifier.
std::string instance_id(std::size_t n, std::size_t index);

/// Sizes 10, 12, ..., 22.
std::vector<std::size_t> full_sizes();
/// Sizes 10, 14, 18.
std::vector<std::size_t> desk_sizes();
inline constexpr std::size_t kFullCountPerSize = 100;
inline constexpr std::size_t kDeskCountPerSize = 50;

/// Generates and brute-forces count_per_size instances for every size.
/// Instance seeds are derive_seed(seed, id, 0), so the result does not
/// depend on the worker count.
Corpus generate_corpus(std::span<const std::size_t> sizes, std::size_t count_per_size, std::size_t degree,
                       std::uint64_t seed, std::size_t workers = 0, const BruteForceOptions& brute = {});

/// Directory layout:
///   <dir>/manifest.json
///   <dir>/n<N>/<id>.json         problem file
///   <dir>/n<N>/<id>.truth.json   ground-truth sidecar
void save_corpus(const Corpus& corpus, const std::filesystem::path& dir);

struct CorpusLoadOptions {
  /// Fraction of instances whose ground truth is recomputed and compared.
  double verify_fraction = 0.05;
  std::uint64_t verify_seed = 0;
};

Corpus load_corpus(const std::filesystem::path& dir, const CorpusLoadOptions& options = {});

}  // namespace qasa
