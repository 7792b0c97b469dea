// Copyright 2026 The osu Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "oracles.h"

#include <algorithm>
#include <cmath>
#include <limits>

namespace osu::testing {
namespace {

// Number of grid centres (k + 0.5) * h inside [lo, hi).
int64_t CentresIn(double lo, double hi, double h) {
  if (hi <= lo) return 0;
  const int64_t first = static_cast<int64_t>(std::ceil(lo / h - 0.5));
  const int64_t end = static_cast<int64_t>(std::ceil(hi / h - 0.5));
  return std::max<int64_t>(0, end - first);
}

int Uniform(std::mt19937_64& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

bool Chance(std::mt19937_64& rng, double p) {
  return std::uniform_real_distribution<double>(0, 1)(rng) < p;
}

double PlainIou(const BoundingBox& a, const BoundingBox& b) {
  const double ix = std::max(0.0, std::min(a.x2, b.x2) - std::max(a.x1, b.x1));
  const double iy = std::max(0.0, std::min(a.y2, b.y2) - std::max(a.y1, b.y1));
  const double inter = ix * iy;
  const double uni = (a.x2 - a.x1) * (a.y2 - a.y1) + (b.x2 - b.x1) * (b.y2 - b.y1) - inter;
  return uni > 0 ? inter / uni : 0.0;
}

struct RoleTruth {
  bool value = false;
  bool grounded = false;
};

std::vector<RoleTruth> JudgeFrame(const Annotation& gt, const PredictedFrame* frame,
                                  double threshold) {
  std::vector<RoleTruth> out(gt.roles.size());
  if (frame == nullptr) return out;
  for (size_t i = 0; i < gt.roles.size(); ++i) {
    const RoleAnnotation& truth = gt.roles[i];
    const PredictedRole* guess = nullptr;
    for (const auto& r : frame->roles) {
      if (r.role == truth.role) guess = &r;
    }
    if (guess == nullptr) continue;
    bool noun_hit = false;
    for (const auto& n : truth.nouns) noun_hit = noun_hit || n == guess->noun;
    bool box_hit = false;
    if (truth.box.has_value()) {
      box_hit = guess->box.has_value() && PlainIou(*truth.box, *guess->box) >= threshold;
    } else {
      box_hit = guess->box_absent;
    }
    out[i].value = noun_hit;
    out[i].grounded = noun_hit && box_hit;
  }
  return out;
}

double Pct(size_t num, size_t den) {
  if (den == 0) return std::numeric_limits<double>::quiet_NaN();
  return 100.0 * static_cast<double>(num) / static_cast<double>(den);
}

const char* const kRoleNames[] = {"Agent", "Tool", "Item", "Place", "Source", "Destination"};

BoundingBox RandomIntBox(std::mt19937_64& rng, int width, int height) {
  const int x1 = Uniform(rng, 0, width - 2);
  const int y1 = Uniform(rng, 0, height - 2);
  const int x2 = Uniform(rng, x1 + 1, width);
  const int y2 = Uniform(rng, y1 + 1, height);
  return {double(x1), double(y1), double(x2), double(y2)};
}

}  // namespace

std::string TestDataPath(const std::string& name) {
  return std::string(OSU_TESTDATA_DIR) + "/" + name;
}

double GridIou(const BoundingBox& a, const BoundingBox& b, double h) {
  const double area_a = double(CentresIn(a.x1, a.x2, h)) * double(CentresIn(a.y1, a.y2, h));
  const double area_b = double(CentresIn(b.x1, b.x2, h)) * double(CentresIn(b.y1, b.y2, h));
  const double inter =
      double(CentresIn(std::max(a.x1, b.x1), std::min(a.x2, b.x2), h)) *
      double(CentresIn(std::max(a.y1, b.y1), std::min(a.y2, b.y2), h));
  const double uni = area_a + area_b - inter;
  return uni > 0 ? inter / uni : 0.0;
}

double EnumeratedGridIou(const BoundingBox& a, const BoundingBox& b, double extent,
                         double h) {
  const int n = static_cast<int>(std::lround(extent / h));
  uint64_t in_a = 0, in_b = 0, in_both = 0;
  for (int i = 0; i < n; ++i) {
    const double y = (i + 0.5) * h;
    for (int j = 0; j < n; ++j) {
      const double x = (j + 0.5) * h;
      const bool pa = x >= a.x1 && x < a.x2 && y >= a.y1 && y < a.y2;
      const bool pb = x >= b.x1 && x < b.x2 && y >= b.y1 && y < b.y2;
      in_a += pa;
      in_b += pb;
      in_both += pa && pb;
    }
  }
  const uint64_t uni = in_a + in_b - in_both;
  return uni ? double(in_both) / double(uni) : 0.0;
}

std::vector<uint32_t> NaiveRleCounts(const Bitmask& mask) {
  std::vector<uint32_t> counts;
  uint8_t current = 0;
  uint32_t run = 0;
  for (int row = 0; row < mask.height; ++row) {
    for (int col = 0; col < mask.width; ++col) {
      const uint8_t v = mask.at(col, row) ? 1 : 0;
      if (v != current) {
        counts.push_back(run);
        current = v;
        run = 0;
      }
      ++run;
    }
  }
  counts.push_back(run);
  return counts;
}

Bitmask NaiveRleDecode(int width, int height, const std::vector<uint32_t>& counts) {
  Bitmask out(width, height);
  size_t pos = 0;
  uint8_t value = 0;
  for (uint32_t c : counts) {
    for (uint32_t k = 0; k < c; ++k, ++pos) out.bits[pos] = value;
    value ^= 1;
  }
  return out;
}

Bitmask RandomBitmask(std::mt19937_64& rng, int width, int height) {
  Bitmask m(width, height);
  // Mix of noise densities and blocky runs so both short and long runs occur.
  const int style = Uniform(rng, 0, 3);
  const double density = std::uniform_real_distribution<double>(0, 1)(rng);
  uint8_t run_value = 0;
  for (auto& b : m.bits) {
    switch (style) {
      case 0: b = Chance(rng, density); break;
      case 1:
        if (Chance(rng, 0.02)) run_value ^= 1;
        b = run_value;
        break;
      case 2: b = 0; break;
      default: b = 1; break;
    }
  }
  if (style >= 2 && Chance(rng, 0.5) && !m.bits.empty()) {
    m.bits[Uniform(rng, 0, int(m.bits.size()) - 1)] ^= 1;
  }
  return m;
}

std::vector<Bitmask> PixelPriorityOracle(const std::vector<EntityMask>& masks) {
  std::vector<Bitmask> dense;
  std::vector<uint64_t> area;
  for (const auto& m : masks) {
    dense.push_back(NaiveRleDecode(m.mask.width, m.mask.height, m.mask.counts));
    area.push_back(std::count(dense.back().bits.begin(), dense.back().bits.end(), 1));
  }
  std::vector<Bitmask> out;
  for (const auto& d : dense) out.emplace_back(d.width, d.height);
  if (dense.empty()) return out;
  for (size_t p = 0; p < dense[0].bits.size(); ++p) {
    int owner = -1;
    for (size_t i = 0; i < dense.size(); ++i) {
      if (!dense[i].bits[p]) continue;
      if (owner < 0) {
        owner = int(i);
        continue;
      }
      const auto& best = masks[owner];
      const bool better =
          masks[i].confidence > best.confidence ||
          (masks[i].confidence == best.confidence && area[i] < area[owner]);
      if (better) owner = int(i);
    }
    if (owner >= 0) out[owner].bits[p] = 1;
  }
  return out;
}

std::vector<EntityMask> RandomMaskSet(std::mt19937_64& rng, int width, int height,
                                      int count) {
  const double confidences[] = {0.5, 0.75, 0.9, 1.0};
  std::vector<EntityMask> out;
  for (int i = 0; i < count; ++i) {
    Bitmask m(width, height);
    const int cx = Uniform(rng, 0, width - 1), cy = Uniform(rng, 0, height - 1);
    const int rx = Uniform(rng, 1, std::max(1, width / 2));
    const int ry = Uniform(rng, 1, std::max(1, height / 2));
    const bool ellipse = Chance(rng, 0.5);
    for (int row = 0; row < height; ++row) {
      for (int col = 0; col < width; ++col) {
        const double dx = double(col - cx) / rx, dy = double(row - cy) / ry;
        const bool in = ellipse ? dx * dx + dy * dy <= 1.0
                                : std::abs(col - cx) <= rx && std::abs(row - cy) <= ry;
        if (in) m.set(col, row);
      }
    }
    out.push_back({std::string(kRoleNames[i % 6]) + std::to_string(i),
                   RleMask{width, height, NaiveRleCounts(m)},
                   confidences[Uniform(rng, 0, 3)]});
  }
  return out;
}

double SimpsonNormalCdf(double x, int intervals) {
  if (intervals % 2) ++intervals;
  const double kInvSqrt2Pi = 0.39894228040143267794;
  auto pdf = [&](double t) { return kInvSqrt2Pi * std::exp(-0.5 * t * t); };
  const double h = x / intervals;
  double sum = pdf(0) + pdf(x);
  for (int i = 1; i < intervals; ++i) sum += (i % 2 ? 4.0 : 2.0) * pdf(i * h);
  return 0.5 + sum * h / 3.0;
}

FourteenNumbers BruteForceMetrics(const std::vector<Annotation>& gt,
                                  const std::vector<Prediction>& predictions,
                                  double iou_threshold) {
  // counts[setting] = {images, role_units, verb, value, value_all, grounded, grounded_all}
  size_t counts[3][7] = {};
  for (const Annotation& a : gt) {
    const Prediction* p = nullptr;
    for (const auto& cand : predictions) {
      if (cand.image_id == a.image_id) p = &cand;
    }
    if (p == nullptr) continue;
    for (int s = 0; s < 3; ++s) {
      bool verb_ok = true;
      const PredictedFrame* frame = nullptr;
      if (s == 0) {
        verb_ok = p->top5[0].verb == a.verb;
        if (verb_ok && p->top5[0].frame) frame = &*p->top5[0].frame;
      } else if (s == 1) {
        verb_ok = false;
        for (const auto& g : p->top5) {
          if (g.verb != a.verb) continue;
          verb_ok = true;
          if (g.frame) frame = &*g.frame;
        }
      } else if (p->gt_conditioned) {
        frame = &*p->gt_conditioned;
      }
      const auto judged = JudgeFrame(a, frame, iou_threshold);
      size_t* c = counts[s];
      c[0] += 1;
      c[1] += judged.size();
      c[2] += verb_ok;
      bool all_v = frame != nullptr && !judged.empty();
      bool all_g = all_v;
      for (const auto& r : judged) {
        c[3] += r.value;
        c[5] += r.grounded;
        all_v = all_v && r.value;
        all_g = all_g && r.grounded;
      }
      c[4] += all_v;
      c[6] += all_g;
    }
  }
  FourteenNumbers out;
  size_t k = 0;
  for (int s = 0; s < 3; ++s) {
    const size_t* c = counts[s];
    if (s != 2) out[k++] = Pct(c[2], c[0]);
    out[k++] = Pct(c[3], c[1]);
    out[k++] = Pct(c[4], c[0]);
    out[k++] = Pct(c[5], c[1]);
    out[k++] = Pct(c[6], c[0]);
  }
  return out;
}

MiniDataset RandomMiniDataset(std::mt19937_64& rng, int images) {
  constexpr int kVerbs = 8;
  constexpr int kNouns = 10;
  auto noun = [&]() -> std::string {
    return Chance(rng, 0.1) ? std::string() : "n" + std::to_string(Uniform(rng, 0, kNouns - 1));
  };
  // Verb v has roles kRoleNames[0 .. v % 6].
  auto roles_of = [](int v) { return v % 6 + 1; };

  MiniDataset data;
  for (int i = 0; i < images; ++i) {
    const int width = Uniform(rng, 20, 120), height = Uniform(rng, 20, 120);
    Annotation a;
    a.image_id = "img" + std::to_string(i);
    a.width = width;
    a.height = height;
    const int verb = Uniform(rng, 0, kVerbs - 1);
    a.verb = "v" + std::to_string(verb);
    for (int r = 0; r < roles_of(verb); ++r) {
      RoleAnnotation ra;
      ra.role = kRoleNames[r];
      for (auto& n : ra.nouns) n = Chance(rng, 0.5) && r > 0 ? ra.nouns[0] : noun();
      if (Chance(rng, 0.8)) ra.box = RandomIntBox(rng, width, height);
      a.roles.push_back(std::move(ra));
    }

    auto make_frame = [&](int v, bool is_truth) {
      PredictedFrame f;
      for (int r = 0; r < roles_of(v); ++r) {
        // Role missing from the prediction; frames keep at least one role.
        const bool last_chance = r == roles_of(v) - 1 && f.roles.empty();
        if (Chance(rng, 0.05) && !last_chance) continue;
        PredictedRole pr;
        pr.role = kRoleNames[r];
        const RoleAnnotation* truth = is_truth ? &a.roles[r] : nullptr;
        pr.noun = truth && Chance(rng, 0.6) ? truth->nouns[Uniform(rng, 0, 2)] : noun();
        const double u = std::uniform_real_distribution<double>(0, 1)(rng);
        if (truth && truth->box && u < 0.25) {
          pr.box = truth->box;
        } else if (truth && truth->box && u < 0.5) {
          // Shifted copy of the truth; a shift of a third of the side gives
          // IoU exactly 0.5, which probes the threshold boundary.
          BoundingBox b = *truth->box;
          const double w = b.x2 - b.x1;
          const double dx = Chance(rng, 0.3) ? std::floor(w / 3) : Uniform(rng, 0, int(w));
          b.x1 = std::min(b.x1 + dx, double(width - 1));
          b.x2 = std::min(b.x2 + dx, double(width));
          pr.box = b;
        } else if (truth && !truth->box && u < 0.6) {
          pr.box_absent = true;
        } else if (u < 0.85) {
          pr.box = RandomIntBox(rng, width, height);
        } else {
          pr.box_absent = true;
        }
        f.roles.push_back(std::move(pr));
      }
      return f;
    };

    Prediction p;
    p.image_id = a.image_id;
    std::vector<int> verbs;
    const int n_guess = Uniform(rng, 1, 5);
    const double u = std::uniform_real_distribution<double>(0, 1)(rng);
    const int gt_slot = u < 0.5 ? 0 : (u < 0.8 ? Uniform(rng, 1, 4) : -1);
    while (int(verbs.size()) < n_guess) {
      int v = Uniform(rng, 0, kVerbs - 1);
      if (v == verb || std::find(verbs.begin(), verbs.end(), v) != verbs.end()) continue;
      verbs.push_back(v);
    }
    if (gt_slot >= 0 && gt_slot < n_guess) verbs[gt_slot] = verb;
    double score = 1.0;
    for (size_t g = 0; g < verbs.size(); ++g) {
      VerbGuess guess;
      guess.verb = "v" + std::to_string(verbs[g]);
      score *= 0.7;
      guess.score = score;
      if (g == 0 || Chance(rng, 0.7)) {
        guess.frame = make_frame(verbs[g], verbs[g] == verb);
        guess.frame->verb = guess.verb;
      }
      p.top5.push_back(std::move(guess));
    }
    if (Chance(rng, 0.85)) p.gt_conditioned = make_frame(verb, true);
    data.gt.push_back(std::move(a));
    data.predictions.push_back(std::move(p));
  }
  return data;
}

}  // namespace osu::testing
