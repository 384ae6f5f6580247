#include "qasa/corpus.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include "json.hpp"
#include "qasa/errors.hpp"
#include "qasa/io.hpp"
#include "qasa/parallel.hpp"

namespace qasa {

namespace {

std::filesystem::path problem_relpath(const CorpusInstance& inst) {
  return std::filesystem::path("n" + std::to_string(inst.problem.size())) / (inst.id + ".json");
}

std::filesystem::path truth_relpath(const CorpusInstance& inst) {
  return std::filesystem::path("n" + std::to_string(inst.problem.size())) / (inst.id + ".truth.json");
}

}  // namespace

const CorpusInstance* Corpus::find(std::string_view id) const {
  auto it = std::find_if(instances.begin(), instances.end(), [&](const CorpusInstance& c) { return c.id == id; });
  return it == instances.end() ? nullptr : &*it;
}

std::string instance_id(std::size_t n, std::size_t index) {
  char buffer[48];
  std::snprintf(buffer, sizeof buffer, "n%zu_i%03zu", n, index);
  return buffer;
}

std::vector<std::size_t> full_sizes() { return {10, 12, 14, 16, 18, 20, 22}; }

std::vector<std::size_t> desk_sizes() { return {10, 14, 18}; }

Corpus generate_corpus(std::span<const std::size_t> sizes, std::size_t count_per_size, std::size_t degree,
                       std::uint64_t seed, std::size_t workers, const BruteForceOptions& brute) {
  Corpus corpus;
  corpus.manifest = {{sizes.begin(), sizes.end()}, count_per_size, degree, seed};
  for (std::size_t n : sizes) {
    if (n <= degree || (n * degree) % 2 != 0) {
      throw std::invalid_argument("generate_corpus: no simple " + std::to_string(degree) + "-regular graph on " +
                                  std::to_string(n) + " vertices");
    }
    if (n > brute.max_variables) {
      throw ResourceLimitError("generate_corpus: n = " + std::to_string(n) + " exceeds the brute-force cap");
    }
    for (std::size_t k = 0; k < count_per_size; ++k) {
      CorpusInstance inst;
      inst.id = instance_id(n, k);
      inst.seed = derive_seed(seed, inst.id, 0);
      corpus.instances.push_back(std::move(inst));
    }
  }
  std::vector<std::size_t> size_of(corpus.instances.size());
  {
    std::size_t k = 0;
    for (std::size_t n : sizes) {
      for (std::size_t c = 0; c < count_per_size; ++c) size_of[k++] = n;
    }
  }
  parallel_for(corpus.instances.size(), workers, [&](std::size_t k) {
    auto& inst = corpus.instances[k];
    Rng rng(inst.seed);
    auto generated = generate_problem(size_of[k], degree, rng);
    inst.problem = IsingProblem({generated.h().begin(), generated.h().end()},
                                {generated.couplings().begin(), generated.couplings().end()}, inst.seed);
    inst.truth = brute_force(inst.problem, brute);
  });
  return corpus;
}

void save_corpus(const Corpus& corpus, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  std::ostringstream manifest;
  manifest << "{\n  \"format\": \"qasa-corpus/1\",\n  \"seed\": " << corpus.manifest.seed
           << ",\n  \"degree\": " << corpus.manifest.degree
           << ",\n  \"count_per_size\": " << corpus.manifest.count_per_size << ",\n  \"sizes\": [";
  for (std::size_t k = 0; k < corpus.manifest.sizes.size(); ++k) {
    manifest << (k ? ", " : "") << corpus.manifest.sizes[k];
  }
  manifest << "],\n  \"instances\": [";
  for (std::size_t k = 0; k < corpus.instances.size(); ++k) {
    const auto& inst = corpus.instances[k];
    manifest << (k ? ",\n    " : "\n    ") << "{\"id\": \"" << inst.id << "\", \"n\": " << inst.problem.size()
             << ", \"seed\": " << inst.seed << ", \"problem\": \"" << problem_relpath(inst).generic_string()
             << "\", \"truth\": \"" << truth_relpath(inst).generic_string() << "\"}";
    save_problem(dir / problem_relpath(inst), inst.problem);
    save_truth(dir / truth_relpath(inst), inst.truth, inst.problem.size());
  }
  manifest << (corpus.instances.empty() ? "]\n}\n" : "\n  ]\n}\n");
  write_file_atomic(dir / "manifest.json", manifest.str());
}

Corpus load_corpus(const std::filesystem::path& dir, const CorpusLoadOptions& options) {
  std::ifstream in(dir / "manifest.json");
  if (!in) throw IoError("cannot open " + (dir / "manifest.json").string());
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("manifest: ") + e.what(), 0);
  }

  Corpus corpus;
  try {
    corpus.manifest.seed = doc.at("seed").get<std::uint64_t>();
    corpus.manifest.degree = doc.at("degree").get<std::size_t>();
    corpus.manifest.count_per_size = doc.at("count_per_size").get<std::size_t>();
    corpus.manifest.sizes = doc.at("sizes").get<std::vector<std::size_t>>();
    for (const auto& entry : doc.at("instances")) {
      CorpusInstance inst;
      inst.id = entry.at("id").get<std::string>();
      inst.seed = entry.at("seed").get<std::uint64_t>();
      inst.problem = load_problem(dir / entry.at("problem").get<std::string>());
      inst.truth = load_truth(dir / entry.at("truth").get<std::string>());
      if (inst.problem.size() != entry.at("n").get<std::size_t>()) {
        throw FormatError("manifest: size mismatch for " + inst.id, 0);
      }
      corpus.instances.push_back(std::move(inst));
    }
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("manifest: ") + e.what(), 0);
  }

  std::map<std::size_t, std::size_t> per_size;
  for (const auto& inst : corpus.instances) ++per_size[inst.problem.size()];
  for (std::size_t n : corpus.manifest.sizes) {
    if (per_size[n] != corpus.manifest.count_per_size) {
      throw FormatError("manifest: size " + std::to_string(n) + " has " + std::to_string(per_size[n]) +
                            " instances, expected " + std::to_string(corpus.manifest.count_per_size),
                        0);
    }
  }

  if (options.verify_fraction > 0.0 && !corpus.instances.empty()) {
    const auto total = corpus.instances.size();
    const auto wanted = std::min<std::size_t>(
        total, static_cast<std::size_t>(std::ceil(options.verify_fraction * static_cast<double>(total))));
    std::vector<std::size_t> order(total);
    for (std::size_t k = 0; k < total; ++k) order[k] = k;
    Rng rng(options.verify_seed);
    for (std::size_t k = 0; k < wanted; ++k) {
      std::swap(order[k], order[k + rng.below(total - k)]);
      const auto& inst = corpus.instances[order[k]];
      const auto fresh = brute_force(inst.problem);
      if (fresh.ground_states != inst.truth.ground_states ||
          std::abs(fresh.min_energy - inst.truth.min_energy) > kTieEpsilon) {
        throw FormatError("corpus: stored ground truth for " + inst.id + " does not re-verify", 0);
      }
    }
  }
  return corpus;
}

}  // namespace qasa
