// Copyright 2026 The twomatch Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Edmonds' weighted matching with Gabow's O(n^3) bookkeeping. Duals are
// kept doubled (slack = y_i + y_j - 2 w_ij) and are exact rationals, so no
// epsilon comparisons appear anywhere.
//
// Endpoints: edge k has endpoints 2k (its u) and 2k+1 (its v); p ^ 1 is the
// opposite endpoint. Labels: 0 free, 1 S, 2 T; bit 4 marks a blossom during
// scanning.

#include <algorithm>
#include <cassert>
#include <optional>

#include "twomatch/matching.hpp"

namespace twomatch::detail {

namespace {

class BlossomSolver {
 public:
  BlossomSolver(int n, std::span<const Edge> edges,
                std::span<const Rational> weights, bool max_cardinality)
      : n_(n),
        edges_(edges),
        weights_(weights),
        max_cardinality_(max_cardinality) {}

  std::vector<EdgeId> solve();

 private:
  int endpoint(int p) const {
    return (p & 1) ? edges_[p >> 1].v : edges_[p >> 1].u;
  }
  Rational slack(int k) const {
    const Edge& e = edges_[k];
    return dual_[e.u] + dual_[e.v] - weights_[k] - weights_[k];
  }

  template <typename F>
  void for_each_leaf(int b, F&& f) const {
    if (b < n_) {
      f(b);
      return;
    }
    for (int t : childs_[b]) for_each_leaf(t, f);
  }

  void assign_label(int w, int t, int p);
  int scan_blossom(int v, int w);
  void add_blossom(int base, int k);
  void expand_blossom(int b, bool endstage);
  void augment_blossom(int b, int v);
  void augment_matching(int k);

  int n_;
  std::span<const Edge> edges_;
  std::span<const Rational> weights_;
  bool max_cardinality_;

  std::vector<std::vector<int>> neighbend_;
  std::vector<int> mate_;
  std::vector<int> label_;
  std::vector<int> labelend_;
  std::vector<int> inblossom_;
  std::vector<int> parent_;
  std::vector<std::vector<int>> childs_;
  std::vector<int> base_;
  std::vector<std::vector<int>> endps_;
  std::vector<int> bestedge_;
  std::vector<std::optional<std::vector<int>>> blossombestedges_;
  std::vector<int> unused_;
  std::vector<Rational> dual_;
  std::vector<char> allowedge_;
  std::vector<int> queue_;
};

void BlossomSolver::assign_label(int w, int t, int p) {
  const int b = inblossom_[w];
  assert(label_[w] == 0 && label_[b] == 0);
  label_[w] = label_[b] = t;
  labelend_[w] = labelend_[b] = p;
  bestedge_[w] = bestedge_[b] = -1;
  if (t == 1) {
    for_each_leaf(b, [&](int v) { queue_.push_back(v); });
  } else if (t == 2) {
    const int base = base_[b];
    assert(mate_[base] >= 0);
    assign_label(endpoint(mate_[base]), 1, mate_[base] ^ 1);
  }
}

// Traces back from v and w to find either a new blossom base or an
// augmenting path (returns -1).
int BlossomSolver::scan_blossom(int v, int w) {
  std::vector<int> path;
  int base = -1;
  while (v != -1 || w != -1) {
    int b = inblossom_[v];
    if (label_[b] & 4) {
      base = base_[b];
      break;
    }
    assert(label_[b] == 1);
    path.push_back(b);
    label_[b] = 5;
    if (labelend_[b] == -1) {
      v = -1;
    } else {
      v = endpoint(labelend_[b]);
      b = inblossom_[v];
      assert(label_[b] == 2);
      v = endpoint(labelend_[b]);
    }
    if (w != -1) std::swap(v, w);
  }
  for (int b : path) label_[b] = 1;
  return base;
}

void BlossomSolver::add_blossom(int base, int k) {
  int v = edges_[k].u;
  int w = edges_[k].v;
  const int bb = inblossom_[base];
  int bv = inblossom_[v];
  int bw = inblossom_[w];
  const int b = unused_.back();
  unused_.pop_back();
  base_[b] = base;
  parent_[b] = -1;
  parent_[bb] = b;
  auto& path = childs_[b];
  auto& endps = endps_[b];
  path.clear();
  endps.clear();
  while (bv != bb) {
    parent_[bv] = b;
    path.push_back(bv);
    endps.push_back(labelend_[bv]);
    v = endpoint(labelend_[bv]);
    bv = inblossom_[v];
  }
  path.push_back(bb);
  std::reverse(path.begin(), path.end());
  std::reverse(endps.begin(), endps.end());
  endps.push_back(2 * k);
  while (bw != bb) {
    parent_[bw] = b;
    path.push_back(bw);
    endps.push_back(labelend_[bw] ^ 1);
    w = endpoint(labelend_[bw]);
    bw = inblossom_[w];
  }
  assert(label_[bb] == 1);
  label_[b] = 1;
  labelend_[b] = labelend_[bb];
  dual_[b] = Rational(0);
  for_each_leaf(b, [&](int leaf) {
    if (label_[inblossom_[leaf]] == 2) queue_.push_back(leaf);
    inblossom_[leaf] = b;
  });

  std::vector<int> bestedgeto(static_cast<size_t>(2 * n_), -1);
  for (int sub : path) {
    std::vector<std::vector<int>> nblists;
    if (!blossombestedges_[sub]) {
      for_each_leaf(sub, [&](int leaf) {
        std::vector<int> list;
        for (int p : neighbend_[leaf]) list.push_back(p >> 1);
        nblists.push_back(std::move(list));
      });
    } else {
      nblists.push_back(*blossombestedges_[sub]);
    }
    for (const auto& nblist : nblists) {
      for (int kk : nblist) {
        int i = edges_[kk].u;
        int j = edges_[kk].v;
        if (inblossom_[j] == b) std::swap(i, j);
        const int bj = inblossom_[j];
        if (bj != b && label_[bj] == 1 &&
            (bestedgeto[bj] == -1 || slack(kk) < slack(bestedgeto[bj]))) {
          bestedgeto[bj] = kk;
        }
      }
    }
    blossombestedges_[sub].reset();
    bestedge_[sub] = -1;
  }
  std::vector<int> best;
  for (int kk : bestedgeto) {
    if (kk != -1) best.push_back(kk);
  }
  bestedge_[b] = -1;
  for (int kk : best) {
    if (bestedge_[b] == -1 || slack(kk) < slack(bestedge_[b])) {
      bestedge_[b] = kk;
    }
  }
  blossombestedges_[b] = std::move(best);
}

void BlossomSolver::expand_blossom(int b, bool endstage) {
  for (int s : childs_[b]) {
    parent_[s] = -1;
    if (s < n_) {
      inblossom_[s] = s;
    } else if (endstage && dual_[s].is_zero()) {
      expand_blossom(s, endstage);
    } else {
      for_each_leaf(s, [&](int leaf) { inblossom_[leaf] = s; });
    }
  }
  if (!endstage && label_[b] == 2) {
    // Relabel the sub-blossoms along the even-length path from the entry
    // child to the base.
    const auto& childs = childs_[b];
    const auto& endps = endps_[b];
    const int len = static_cast<int>(childs.size());
    auto at = [len](int j) { return ((j % len) + len) % len; };
    const int entrychild = inblossom_[endpoint(labelend_[b] ^ 1)];
    int j = static_cast<int>(
        std::find(childs.begin(), childs.end(), entrychild) - childs.begin());
    int jstep;
    int endptrick;
    if (j & 1) {
      j -= len;
      jstep = 1;
      endptrick = 0;
    } else {
      jstep = -1;
      endptrick = 1;
    }
    int p = labelend_[b];
    while (j != 0) {
      label_[endpoint(p ^ 1)] = 0;
      label_[endpoint(endps[at(j - endptrick)] ^ endptrick ^ 1)] = 0;
      assign_label(endpoint(p ^ 1), 2, p);
      allowedge_[endps[at(j - endptrick)] >> 1] = 1;
      j += jstep;
      p = endps[at(j - endptrick)] ^ endptrick;
      allowedge_[p >> 1] = 1;
      j += jstep;
    }
    int bv = childs[at(j)];
    label_[endpoint(p ^ 1)] = label_[bv] = 2;
    labelend_[endpoint(p ^ 1)] = labelend_[bv] = p;
    bestedge_[bv] = -1;
    j += jstep;
    while (childs[at(j)] != entrychild) {
      bv = childs[at(j)];
      if (label_[bv] == 1) {
        j += jstep;
        continue;
      }
      int found = -1;
      for_each_leaf(bv, [&](int leaf) {
        if (found == -1 && label_[leaf] != 0) found = leaf;
      });
      if (found != -1) {
        assert(label_[found] == 2);
        assert(inblossom_[found] == bv);
        label_[found] = 0;
        label_[endpoint(mate_[base_[bv]])] = 0;
        assign_label(found, 2, labelend_[found]);
      }
      j += jstep;
    }
  }
  label_[b] = labelend_[b] = -1;
  childs_[b].clear();
  endps_[b].clear();
  base_[b] = -1;
  blossombestedges_[b].reset();
  bestedge_[b] = -1;
  unused_.push_back(b);
}

void BlossomSolver::augment_blossom(int b, int v) {
  int t = v;
  while (parent_[t] != b) t = parent_[t];
  if (t >= n_) augment_blossom(t, v);
  auto& childs = childs_[b];
  auto& endps = endps_[b];
  const int len = static_cast<int>(childs.size());
  auto at = [len](int j) { return ((j % len) + len) % len; };
  const int i =
      static_cast<int>(std::find(childs.begin(), childs.end(), t) -
                       childs.begin());
  int j = i;
  int jstep;
  int endptrick;
  if (i & 1) {
    j -= len;
    jstep = 1;
    endptrick = 0;
  } else {
    jstep = -1;
    endptrick = 1;
  }
  while (j != 0) {
    j += jstep;
    t = childs[at(j)];
    const int p = endps[at(j - endptrick)] ^ endptrick;
    if (t >= n_) augment_blossom(t, endpoint(p));
    j += jstep;
    t = childs[at(j)];
    if (t >= n_) augment_blossom(t, endpoint(p ^ 1));
    mate_[endpoint(p)] = p ^ 1;
    mate_[endpoint(p ^ 1)] = p;
  }
  std::rotate(childs.begin(), childs.begin() + i, childs.end());
  std::rotate(endps.begin(), endps.begin() + i, endps.end());
  base_[b] = base_[childs[0]];
  assert(base_[b] == v);
}

void BlossomSolver::augment_matching(int k) {
  const int ends[2][2] = {{edges_[k].u, 2 * k + 1}, {edges_[k].v, 2 * k}};
  for (const auto& start : ends) {
    int s = start[0];
    int p = start[1];
    while (true) {
      const int bs = inblossom_[s];
      assert(label_[bs] == 1);
      if (bs >= n_) augment_blossom(bs, s);
      mate_[s] = p;
      if (labelend_[bs] == -1) break;
      const int t = endpoint(labelend_[bs]);
      const int bt = inblossom_[t];
      assert(label_[bt] == 2);
      s = endpoint(labelend_[bt]);
      const int j = endpoint(labelend_[bt] ^ 1);
      assert(base_[bt] == t);
      if (bt >= n_) augment_blossom(bt, j);
      mate_[j] = labelend_[bt];
      p = labelend_[bt] ^ 1;
    }
  }
}

std::vector<EdgeId> BlossomSolver::solve() {
  const int m = static_cast<int>(edges_.size());
  std::vector<EdgeId> result(static_cast<size_t>(n_), -1);
  if (m == 0 || n_ == 0) return result;

  Rational maxweight(0);
  for (const auto& w : weights_) maxweight = std::max(maxweight, w);

  neighbend_.assign(static_cast<size_t>(n_), {});
  for (int k = 0; k < m; ++k) {
    neighbend_[edges_[k].u].push_back(2 * k + 1);
    neighbend_[edges_[k].v].push_back(2 * k);
  }
  const size_t nn = static_cast<size_t>(2 * n_);
  mate_.assign(static_cast<size_t>(n_), -1);
  label_.assign(nn, 0);
  labelend_.assign(nn, -1);
  inblossom_.resize(static_cast<size_t>(n_));
  for (int i = 0; i < n_; ++i) inblossom_[i] = i;
  parent_.assign(nn, -1);
  childs_.assign(nn, {});
  base_.assign(nn, -1);
  for (int i = 0; i < n_; ++i) base_[i] = i;
  endps_.assign(nn, {});
  bestedge_.assign(nn, -1);
  blossombestedges_.assign(nn, std::nullopt);
  unused_.clear();
  for (int b = n_; b < 2 * n_; ++b) unused_.push_back(b);
  dual_.assign(nn, Rational(0));
  for (int i = 0; i < n_; ++i) dual_[i] = maxweight;
  allowedge_.assign(static_cast<size_t>(m), 0);

  for (int stage = 0; stage < n_; ++stage) {
    std::fill(label_.begin(), label_.end(), 0);
    std::fill(bestedge_.begin(), bestedge_.end(), -1);
    for (int b = n_; b < 2 * n_; ++b) blossombestedges_[b].reset();
    std::fill(allowedge_.begin(), allowedge_.end(), 0);
    queue_.clear();

    for (int v = 0; v < n_; ++v) {
      if (mate_[v] == -1 && label_[inblossom_[v]] == 0) assign_label(v, 1, -1);
    }

    bool augmented = false;
    while (true) {
      while (!queue_.empty() && !augmented) {
        const int v = queue_.back();
        queue_.pop_back();
        assert(label_[inblossom_[v]] == 1);
        for (int p : neighbend_[v]) {
          const int k = p >> 1;
          const int w = endpoint(p);
          if (inblossom_[v] == inblossom_[w]) continue;
          Rational kslack;
          if (!allowedge_[k]) {
            kslack = slack(k);
            if (kslack.sign() <= 0) allowedge_[k] = 1;
          }
          if (allowedge_[k]) {
            if (label_[inblossom_[w]] == 0) {
              assign_label(w, 2, p ^ 1);
            } else if (label_[inblossom_[w]] == 1) {
              const int base = scan_blossom(v, w);
              if (base >= 0) {
                add_blossom(base, k);
              } else {
                augment_matching(k);
                augmented = true;
                break;
              }
            } else if (label_[w] == 0) {
              assert(label_[inblossom_[w]] == 2);
              label_[w] = 2;
              labelend_[w] = p ^ 1;
            }
          } else if (label_[inblossom_[w]] == 1) {
            const int b = inblossom_[v];
            if (bestedge_[b] == -1 || kslack < slack(bestedge_[b])) {
              bestedge_[b] = k;
            }
          } else if (label_[w] == 0) {
            if (bestedge_[w] == -1 || kslack < slack(bestedge_[w])) {
              bestedge_[w] = k;
            }
          }
        }
      }
      if (augmented) break;

      // Dual adjustment.
      int deltatype = -1;
      Rational delta;
      int deltaedge = -1;
      int deltablossom = -1;
      if (!max_cardinality_) {
        deltatype = 1;
        delta = *std::min_element(dual_.begin(), dual_.begin() + n_);
      }
      for (int v = 0; v < n_; ++v) {
        if (label_[inblossom_[v]] == 0 && bestedge_[v] != -1) {
          Rational d = slack(bestedge_[v]);
          if (deltatype == -1 || d < delta) {
            delta = std::move(d);
            deltatype = 2;
            deltaedge = bestedge_[v];
          }
        }
      }
      for (int b = 0; b < 2 * n_; ++b) {
        if (parent_[b] == -1 && label_[b] == 1 && bestedge_[b] != -1) {
          Rational d = slack(bestedge_[b]) / Rational(2);
          if (deltatype == -1 || d < delta) {
            delta = std::move(d);
            deltatype = 3;
            deltaedge = bestedge_[b];
          }
        }
      }
      for (int b = n_; b < 2 * n_; ++b) {
        if (base_[b] >= 0 && parent_[b] == -1 && label_[b] == 2 &&
            (deltatype == -1 || dual_[b] < delta)) {
          delta = dual_[b];
          deltatype = 4;
          deltablossom = b;
        }
      }
      if (deltatype == -1) {
        assert(max_cardinality_);
        deltatype = 1;
        delta = std::max(Rational(0), *std::min_element(dual_.begin(),
                                                        dual_.begin() + n_));
      }

      for (int v = 0; v < n_; ++v) {
        if (label_[inblossom_[v]] == 1) {
          dual_[v] -= delta;
        } else if (label_[inblossom_[v]] == 2) {
          dual_[v] += delta;
        }
      }
      for (int b = n_; b < 2 * n_; ++b) {
        if (base_[b] >= 0 && parent_[b] == -1) {
          if (label_[b] == 1) {
            dual_[b] += delta;
          } else if (label_[b] == 2) {
            dual_[b] -= delta;
          }
        }
      }

      if (deltatype == 1) {
        break;
      } else if (deltatype == 2) {
        allowedge_[deltaedge] = 1;
        int i = edges_[deltaedge].u;
        int j = edges_[deltaedge].v;
        if (label_[inblossom_[i]] == 0) std::swap(i, j);
        assert(label_[inblossom_[i]] == 1);
        queue_.push_back(i);
      } else if (deltatype == 3) {
        allowedge_[deltaedge] = 1;
        const int i = edges_[deltaedge].u;
        assert(label_[inblossom_[i]] == 1);
        queue_.push_back(i);
      } else {
        expand_blossom(deltablossom, false);
      }
    }
    if (!augmented) break;

    for (int b = n_; b < 2 * n_; ++b) {
      if (parent_[b] == -1 && base_[b] >= 0 && label_[b] == 1 &&
          dual_[b].is_zero()) {
        expand_blossom(b, true);
      }
    }
  }

  for (int v = 0; v < n_; ++v) {
    if (mate_[v] >= 0) result[v] = mate_[v] >> 1;
  }
  return result;
}

}  // namespace

std::vector<EdgeId> blossom_mates(int n, std::span<const Edge> edges,
                                  std::span<const Rational> weights,
                                  bool max_cardinality) {
  BlossomSolver solver(n, edges, weights, max_cardinality);
  return solver.solve();
}

}  // namespace twomatch::detail
