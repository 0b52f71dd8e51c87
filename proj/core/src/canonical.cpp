#include "iposets/algebra.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>

namespace iposets {

namespace {

// Canonical labelling search. Points are placed one at a time; placing point
// v at position i contributes the block
//   [marked bit] [source position + 1] [target position + 1]
//   [less(v_0, v) .. less(v_{i-1}, v)] [less(v, v_0) .. less(v, v_{i-1})]
// and the canonical labelling is the placement order minimising the
// concatenated blocks lexicographically. Because every block only refers to
// earlier positions, a prefix of the code is shared by all completions of the
// same partial placement, which makes prefix pruning against the best code
// found so far sound.
class Canonicalizer {
 public:
  Canonicalizer(const Iposet& p, Mask marked) : p_(&p), marked_(marked) {
    n_ = p.size();
    placed_.assign(n_, -1);
    cur_.reserve(static_cast<std::size_t>(n_) * (3 + 2 * n_));
    best_perm_.assign(n_, 0);
  }

  void run() {
    if (n_ == 0) {
      has_best_ = true;
      return;
    }
    dfs(0, false);
  }

  const std::vector<std::uint8_t>& code() const { return best_; }
  const std::vector<int>& perm() const { return best_perm_; }

 private:
  struct Candidate {
    std::vector<std::uint8_t> block;
    int vertex;
  };

  std::vector<std::uint8_t> block_for(int v, int level) const {
    std::vector<std::uint8_t> b;
    b.reserve(3 + 2 * static_cast<std::size_t>(level));
    b.push_back((marked_ >> v) & 1 ? 1 : 0);
    b.push_back(static_cast<std::uint8_t>(p_->source_pos(v) + 1));
    b.push_back(static_cast<std::uint8_t>(p_->target_pos(v) + 1));
    for (int j = 0; j < level; ++j) {
      b.push_back(p_->less(order_[j], v) ? 1 : 0);
    }
    for (int j = 0; j < level; ++j) {
      b.push_back(p_->less(v, order_[j]) ? 1 : 0);
    }
    return b;
  }

  void dfs(int level, bool tight) {
    if (level == n_) {
      if (!has_best_ || !tight) {
        best_ = cur_;
        for (int i = 0; i < n_; ++i) {
          best_perm_[order_[i]] = i;
        }
        has_best_ = true;
      }
      return;
    }

    std::vector<Candidate> cands;
    cands.reserve(n_ - level);
    for (int v = 0; v < n_; ++v) {
      if (placed_[v] >= 0) {
        continue;
      }
      // Two unplaced points with identical full relations and identical
      // interface/mark data lead to identical subtrees; keep only the first.
      bool duplicate = false;
      for (const Candidate& c : cands) {
        int u = c.vertex;
        if (p_->up(u) == p_->up(v) && p_->down(u) == p_->down(v) &&
            p_->source_pos(u) == p_->source_pos(v) &&
            p_->target_pos(u) == p_->target_pos(v) &&
            ((marked_ >> u) & 1) == ((marked_ >> v) & 1)) {
          duplicate = true;
          break;
        }
      }
      if (duplicate) {
        continue;
      }
      cands.push_back({block_for(v, level), v});
    }
    std::sort(cands.begin(), cands.end(),
              [](const Candidate& a, const Candidate& b) {
                if (a.block != b.block) {
                  return a.block < b.block;
                }
                return a.vertex < b.vertex;
              });

    const std::size_t offset = cur_.size();
    bool local_tight = tight;
    for (const Candidate& c : cands) {
      bool child_tight = false;
      if (has_best_ && local_tight) {
        int cmp = compare_segment(c.block, offset);
        if (cmp > 0) {
          break;
        }
        child_tight = (cmp == 0);
      }
      order_.push_back(c.vertex);
      placed_[c.vertex] = level;
      cur_.insert(cur_.end(), c.block.begin(), c.block.end());
      dfs(level + 1, child_tight);
      cur_.resize(offset);
      placed_[c.vertex] = -1;
      order_.pop_back();
      if (!local_tight && has_best_) {
        // The best code was (re)set inside this subtree and therefore shares
        // our prefix; later siblings can be compared against it directly.
        local_tight = true;
      }
    }
  }

  int compare_segment(const std::vector<std::uint8_t>& block,
                      std::size_t offset) const {
    for (std::size_t i = 0; i < block.size(); ++i) {
      std::uint8_t b = best_[offset + i];
      if (block[i] != b) {
        return block[i] < b ? -1 : 1;
      }
    }
    return 0;
  }

  const Iposet* p_;
  Mask marked_;
  int n_ = 0;
  std::vector<int> order_;
  std::vector<int> placed_;
  std::vector<std::uint8_t> cur_;
  std::vector<std::uint8_t> best_;
  std::vector<int> best_perm_;
  bool has_best_ = false;
};

CanonicalKey pack_key(const Iposet& canon, Mask marked_canon) {
  std::string bytes;
  int n = canon.size();
  bytes.reserve(8 + static_cast<std::size_t>(canon.dom()) + canon.cod() +
                static_cast<std::size_t>(n) * n / 8);
  bytes.push_back(static_cast<char>(n));
  bytes.push_back(static_cast<char>(canon.dom()));
  bytes.push_back(static_cast<char>(canon.cod()));
  for (int i : canon.sources()) {
    bytes.push_back(static_cast<char>(i));
  }
  for (int i : canon.targets()) {
    bytes.push_back(static_cast<char>(i));
  }
  if (marked_canon != 0) {
    bytes.push_back(static_cast<char>(0x7f));
    for (int chunk = 0; chunk < n; chunk += 8) {
      bytes.push_back(static_cast<char>((marked_canon >> chunk) & 0xff));
    }
  }
  std::uint8_t acc = 0;
  int fill = 0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      acc = static_cast<std::uint8_t>((acc << 1) | (canon.less(i, j) ? 1 : 0));
      if (++fill == 8) {
        bytes.push_back(static_cast<char>(acc));
        acc = 0;
        fill = 0;
      }
    }
  }
  if (fill > 0) {
    bytes.push_back(static_cast<char>(acc << (8 - fill)));
  }
  return CanonicalKey{std::move(bytes)};
}

Mask apply_perm_to_mask(Mask m, const std::vector<int>& perm) {
  Mask out = 0;
  for (std::size_t v = 0; v < perm.size(); ++v) {
    if ((m >> v) & 1) {
      out |= Mask{1} << perm[v];
    }
  }
  return out;
}

}  // namespace

CanonicalKey canonical_form(const Iposet& p) {
  return canonical_form_marked(p, 0);
}

CanonicalKey canonical_form_marked(const Iposet& p, Mask marked) {
  Canonicalizer c(p, marked);
  c.run();
  Iposet canon = p.relabel(c.perm());
  return pack_key(canon, apply_perm_to_mask(marked, c.perm()));
}

std::vector<int> canonical_permutation(const Iposet& p) {
  Canonicalizer c(p, 0);
  c.run();
  return c.perm();
}

Iposet canonical_representative(const Iposet& p) {
  return p.relabel(canonical_permutation(p));
}

namespace {

void automorphism_dfs(const Iposet& p, int v, std::vector<int>& image,
                      Mask used, std::vector<std::vector<int>>& out) {
  int n = p.size();
  if (v == n) {
    out.push_back(image);
    return;
  }
  for (int u = 0; u < n; ++u) {
    if ((used >> u) & 1) {
      continue;
    }
    if (p.source_pos(u) != p.source_pos(v) ||
        p.target_pos(u) != p.target_pos(v) ||
        std::popcount(p.up(u)) != std::popcount(p.up(v)) ||
        std::popcount(p.down(u)) != std::popcount(p.down(v))) {
      continue;
    }
    bool ok = true;
    for (int w = 0; w < v; ++w) {
      if (p.less(w, v) != p.less(image[w], u) ||
          p.less(v, w) != p.less(u, image[w])) {
        ok = false;
        break;
      }
    }
    if (!ok) {
      continue;
    }
    image[v] = u;
    automorphism_dfs(p, v + 1, image, used | (Mask{1} << u), out);
  }
}

}  // namespace

std::vector<std::vector<int>> automorphisms(const Iposet& p) {
  std::vector<std::vector<int>> out;
  std::vector<int> image(p.size(), -1);
  automorphism_dfs(p, 0, image, 0, out);
  return out;
}

}  // namespace iposets
