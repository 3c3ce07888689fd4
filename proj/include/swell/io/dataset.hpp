#pragma once

#include <algorithm>
#include <atomic>
#include <exception>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "swell/common.hpp"
#include "swell/dsp/acoustic.hpp"
#include "swell/dsp/audio.hpp"
#include "swell/io/labels.hpp"
#include "swell/io/pooling.hpp"
#include "swell/io/swem.hpp"

namespace swell::io {

/// One subject after assembly: a pooled vector per modality plus the label
/// (absent for withheld test subjects).
struct SubjectRecord {
  std::string subject_id;
  std::optional<int> label;
  Vec audio_vec;
  Vec text_vec;
  Vec acoustic_vec;  // empty when the pipeline variant does not use it
};

struct DatasetSplit {
  std::vector<SubjectRecord> train;
  std::vector<SubjectRecord> dev;
  std::vector<SubjectRecord> test;
};

/// Manifest entry as written on disk. Paths are kept relative; they resolve
/// against the manifest's directory.
struct ManifestSubject {
  std::string id;
  std::string split;  // train | dev | test
  std::vector<std::string> audio;
  std::vector<std::string> text;
  std::vector<std::string> acoustic;
  std::vector<std::string> wav;
};

struct Manifest {
  std::vector<ManifestSubject> subjects;
  std::string labels;          // labels CSV, relative to root
  std::filesystem::path root;  // directory containing the manifest file

  std::filesystem::path resolve(const std::string& rel) const { return root / rel; }
};

namespace detail {

inline std::vector<std::string> string_list(const nlohmann::json& j, const std::string& key,
                                            const std::string& subject) {
  std::vector<std::string> out;
  for (const auto& item : j) {
    if (!item.is_string())
      throw SchemaError("manifest subject '" + subject + "': entries of '" + key +
                        "' must be strings");
    out.push_back(item.get<std::string>());
  }
  return out;
}

}  // namespace detail

inline Manifest load_manifest(const std::filesystem::path& path) {
  std::ifstream f(path);
  if (!f) throw IoError("cannot open manifest: " + path.string());
  nlohmann::json j;
  try {
    f >> j;
  } catch (const nlohmann::json::exception& e) {
    throw FormatError("manifest is not valid JSON: " + path.string() + " (" + e.what() + ")");
  }

  static const std::set<std::string> top_keys = {"subjects", "labels"};
  static const std::set<std::string> subject_keys = {"id", "split", "audio",
                                                     "text", "acoustic", "wav"};
  for (const auto& [key, _] : j.items())
    if (!top_keys.count(key)) throw SchemaError("manifest has unknown key '" + key + "'");
  if (!j.contains("subjects") || !j["subjects"].is_array())
    throw SchemaError("manifest must contain a 'subjects' array");
  if (!j.contains("labels") || !j["labels"].is_string())
    throw SchemaError("manifest must contain a 'labels' path");

  Manifest m;
  m.root = path.has_parent_path() ? path.parent_path() : std::filesystem::path(".");
  m.labels = j["labels"].get<std::string>();

  std::set<std::string> seen_ids;
  for (const auto& js : j["subjects"]) {
    for (const auto& [key, _] : js.items())
      if (!subject_keys.count(key))
        throw SchemaError("manifest subject has unknown key '" + key + "'");
    ManifestSubject s;
    if (!js.contains("id") || !js["id"].is_string())
      throw SchemaError("manifest subject missing string 'id'");
    s.id = js["id"].get<std::string>();
    if (!js.contains("split") || !js["split"].is_string())
      throw SchemaError("manifest subject '" + s.id + "' missing 'split'");
    s.split = js["split"].get<std::string>();
    if (s.split != "train" && s.split != "dev" && s.split != "test")
      throw SchemaError("manifest subject '" + s.id + "' has invalid split '" + s.split + "'");
    if (!seen_ids.insert(s.id).second)
      throw SchemaError("manifest lists subject '" + s.id + "' more than once");

    if (js.contains("audio")) s.audio = detail::string_list(js["audio"], "audio", s.id);
    if (js.contains("text")) s.text = detail::string_list(js["text"], "text", s.id);
    if (js.contains("acoustic")) s.acoustic = detail::string_list(js["acoustic"], "acoustic", s.id);
    if (js.contains("wav")) s.wav = detail::string_list(js["wav"], "wav", s.id);
    if (s.audio.empty())
      throw SchemaError("manifest subject '" + s.id + "' lists no audio embeddings");
    if (s.text.empty()) throw SchemaError("manifest subject '" + s.id + "' lists no text embeddings");
    m.subjects.push_back(std::move(s));
  }
  return m;
}

inline void save_manifest(const Manifest& m, const std::filesystem::path& path) {
  nlohmann::json j;
  j["labels"] = m.labels;
  j["subjects"] = nlohmann::json::array();
  for (const auto& s : m.subjects) {
    nlohmann::json js;
    js["id"] = s.id;
    js["split"] = s.split;
    js["audio"] = s.audio;
    js["text"] = s.text;
    if (!s.acoustic.empty()) js["acoustic"] = s.acoustic;
    if (!s.wav.empty()) js["wav"] = s.wav;
    j["subjects"].push_back(std::move(js));
  }
  std::ofstream f(path);
  if (!f) throw IoError("cannot write manifest: " + path.string());
  f << j.dump(2) << '\n';
}

struct AssembleOptions {
  PoolStrategy audio_pool = PoolStrategy::mean;
  PoolStrategy text_pool = PoolStrategy::mean;
  bool need_acoustic = true;
  dsp::AcousticVersion acoustic_version = dsp::AcousticVersion::v3;
  int jobs = 1;  // per-subject assembly is embarrassingly parallel
};

namespace detail {

/// Pool each task file, then average the task vectors into one per-modality
/// vector. Cross-task combination is a uniform mean.
inline Vec pooled_task_mean(const Manifest& m, const std::vector<std::string>& paths,
                            PoolStrategy strategy, const std::string& subject_id) {
  Vec acc;
  for (const auto& rel : paths) {
    const auto full = m.resolve(rel);
    EmbeddingMatrix em;
    try {
      em = read_swem(full);
    } catch (const IoError&) {
      throw IoError("subject '" + subject_id + "': missing embedding file " + full.string());
    }
    em.validate();
    Vec v = pool_rows(em, strategy);
    if (acc.empty()) {
      acc = std::move(v);
    } else {
      if (acc.size() != v.size())
        throw SchemaError("subject '" + subject_id + "': task embedding dims differ (" +
                          std::to_string(acc.size()) + " vs " + std::to_string(v.size()) + ")");
      for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += v[i];
    }
  }
  for (double& x : acc) x /= static_cast<double>(paths.size());
  return acc;
}

inline Vec acoustic_from_wavs(const Manifest& m, const std::vector<std::string>& paths,
                              dsp::AcousticVersion version, const std::string& subject_id) {
  Vec acc;
  for (const auto& rel : paths) {
    const auto full = m.resolve(rel);
    dsp::AudioBuffer audio;
    try {
      audio = dsp::read_wav(full);
    } catch (const IoError&) {
      throw IoError("subject '" + subject_id + "': missing WAV file " + full.string());
    }
    Vec v = dsp::extract_acoustic(audio, version).to_vector();
    if (acc.empty()) {
      acc.assign(v.size(), 0.0);
    } else if (acc.size() != v.size()) {
      throw SchemaError("subject '" + subject_id + "': acoustic feature dims differ across tasks");
    }
    for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += v[i];
  }
  for (double& x : acc) x /= static_cast<double>(paths.size());
  return acc;
}

inline SubjectRecord assemble_subject(const Manifest& m, const ManifestSubject& s,
                                      const AssembleOptions& opt) {
  SubjectRecord rec;
  rec.subject_id = s.id;
  rec.audio_vec = pooled_task_mean(m, s.audio, opt.audio_pool, s.id);
  rec.text_vec = pooled_task_mean(m, s.text, opt.text_pool, s.id);
  if (opt.need_acoustic) {
    if (!s.acoustic.empty()) {
      rec.acoustic_vec = pooled_task_mean(m, s.acoustic, PoolStrategy::mean, s.id);
    } else if (!s.wav.empty()) {
      rec.acoustic_vec = acoustic_from_wavs(m, s.wav, opt.acoustic_version, s.id);
    } else {
      throw SchemaError("subject '" + s.id +
                        "' has neither acoustic embeddings nor WAVs, but the "
                        "selected pipeline needs the acoustic modality");
    }
  }
  return rec;
}

template <typename Fn>
inline void parallel_for(std::size_t n, int jobs, Fn&& fn) {
  if (jobs <= 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr first_error;
  std::mutex error_mutex;
  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= n) return;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  const int count = std::min<int>(jobs, static_cast<int>(n));
  pool.reserve(static_cast<std::size_t>(count));
  for (int t = 0; t < count; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);
}

}  // namespace detail

/// Load a manifest and build the three splits. Each modality is pooled per
/// task file and then averaged across tasks; labels attach from the labels
/// CSV (mandatory for train/dev, optional for test).
inline DatasetSplit assemble_dataset(const std::filesystem::path& manifest_path,
                                     const AssembleOptions& opt = {}) {
  const Manifest m = load_manifest(manifest_path);

  std::map<std::string, int> labels;
  try {
    labels = load_labels(m.resolve(m.labels));
  } catch (const IoError&) {
    throw IoError("manifest labels file not found: " + m.resolve(m.labels).string());
  }

  std::vector<SubjectRecord> records(m.subjects.size());
  detail::parallel_for(m.subjects.size(), opt.jobs, [&](std::size_t i) {
    records[i] = detail::assemble_subject(m, m.subjects[i], opt);
  });

  DatasetSplit ds;
  std::size_t audio_dim = 0, text_dim = 0, acoustic_dim = 0;
  for (std::size_t i = 0; i < records.size(); ++i) {
    const auto& s = m.subjects[i];
    SubjectRecord& rec = records[i];

    if (audio_dim == 0) audio_dim = rec.audio_vec.size();
    if (text_dim == 0) text_dim = rec.text_vec.size();
    if (acoustic_dim == 0) acoustic_dim = rec.acoustic_vec.size();
    if (rec.audio_vec.size() != audio_dim)
      throw SchemaError("subject '" + s.id + "': audio dim " +
                        std::to_string(rec.audio_vec.size()) + " differs from " +
                        std::to_string(audio_dim));
    if (rec.text_vec.size() != text_dim)
      throw SchemaError("subject '" + s.id + "': text dim " + std::to_string(rec.text_vec.size()) +
                        " differs from " + std::to_string(text_dim));
    if (opt.need_acoustic && rec.acoustic_vec.size() != acoustic_dim)
      throw SchemaError("subject '" + s.id + "': acoustic dim " +
                        std::to_string(rec.acoustic_vec.size()) + " differs from " +
                        std::to_string(acoustic_dim));

    const auto it = labels.find(s.id);
    if (it != labels.end()) rec.label = it->second;
    if ((s.split == "train" || s.split == "dev") && !rec.label)
      throw SchemaError("subject '" + s.id + "' in split '" + s.split + "' has no label");

    if (s.split == "train")
      ds.train.push_back(std::move(rec));
    else if (s.split == "dev")
      ds.dev.push_back(std::move(rec));
    else
      ds.test.push_back(std::move(rec));
  }
  return ds;
}

}  // namespace swell::io
