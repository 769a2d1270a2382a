/*
 * tree_oracle.hpp: a naive suffix tree over the sorted suffixes of a text,
 * with every operation computed from plain arrays. The lcp-interval tree is
 * materialized by recursive interval splitting at minimum-LCP positions, so
 * the suffix_tree implementation under test shares no code paths with it.
 */

#ifndef RST_TESTS_TREE_ORACLE_HPP
#define RST_TESTS_TREE_ORACLE_HPP

#include <algorithm>
#include <map>

#include <rst/suffix_tree.hpp>

#include "oracles.hpp"

namespace rst::oracle {

struct tree_oracle
{
  text_type text;
  std::vector<size_type> sa, isa, lcp;   // sa[i - 1] = SA[i] etc.

  struct node
  {
    st_node iv;
    size_type depth = 0;                 // string depth
    size_type parent = 0;                // node id; the root points at itself
    size_type tdepth = 0;
    std::vector<size_type> children;     // node ids in alphabetic order
  };
  std::vector<node> nodes;               // in preorder; nodes[0] is the root
  std::map<std::pair<size_type, size_type>, size_type> ids;

  explicit tree_oracle(const text_type& t) : text(t)
  {
    this->sa = suffix_array(t);
    this->isa.assign(this->sa.size(), 0);
    for(size_type i = 0; i < this->sa.size(); i++) { this->isa[this->sa[i] - 1] = i + 1; }
    this->lcp = lcp_array(t, this->sa);
    this->build(1, t.size(), 0, 0);
  }

  size_type n() const { return this->text.size(); }
  size_type count() const { return this->nodes.size(); }
  const node& at(size_type id) const { return this->nodes[id]; }

  bool is_node(const st_node& v) const { return this->ids.count({ v.sp, v.ep }) > 0; }

  size_type id_of(const st_node& v) const { return this->ids.at({ v.sp, v.ep }); }

  // The character pi(v)[i], 1-based.
  byte_type letter_of(size_type id, size_type i) const
  {
    return this->text[this->sa[this->nodes[id].iv.sp - 1] - 1 + i - 1];
  }

  // First character of the edge leading into the node.
  byte_type first_letter(size_type id) const
  {
    return this->letter_of(id, this->nodes[this->nodes[id].parent].depth + 1);
  }

  // Deepest node whose interval contains [lo, hi].
  size_type enclosing(size_type lo, size_type hi) const
  {
    size_type cur = 0;
    while(true)
    {
      bool moved = false;
      for(size_type cid : this->nodes[cur].children)
      {
        const node& ch = this->nodes[cid];
        if(ch.iv.sp <= lo && hi <= ch.iv.ep) { cur = cid; moved = true; break; }
      }
      if(!moved) { return cur; }
    }
  }

  size_type lca_of(size_type a, size_type b) const
  {
    const st_node& u = this->nodes[a].iv;
    const st_node& v = this->nodes[b].iv;
    return this->enclosing(std::min(u.sp, v.sp), std::max(u.ep, v.ep));
  }

  // Suffix link: the lca of the suffix-shifted boundary leaves; the root for
  // the root and for the endmarker leaf.
  size_type slink_of(size_type id) const
  {
    if(id == 0) { return 0; }
    const node& nd = this->nodes[id];
    if(nd.iv.sp == 1 && nd.iv.ep == 1) { return 0; }
    size_type x = this->isa[this->sa[nd.iv.sp - 1]];   // ISA[SA[sp] + 1]
    size_type y = this->isa[this->sa[nd.iv.ep - 1]];
    return this->enclosing(std::min(x, y), std::max(x, y));
  }

  size_type slink_k_of(size_type id, size_type k) const
  {
    size_type cur = id;
    for(size_type i = 0; i < k; i++) { cur = this->slink_of(cur); }
    return cur;
  }

  // Child by the first symbol of its edge; count() when absent.
  size_type child_of(size_type id, byte_type c) const
  {
    for(size_type cid : this->nodes[id].children)
    {
      if(this->first_letter(cid) == c) { return cid; }
    }
    return this->count();
  }

  // Highest ancestor-or-self with string depth at least d.
  size_type laq_s_of(size_type id, size_type d) const
  {
    size_type best = id, cur = id;
    while(cur != 0)
    {
      cur = this->nodes[cur].parent;
      if(this->nodes[cur].depth < d) { break; }
      best = cur;
    }
    return best;
  }

  // Ancestor at tree depth d.
  size_type laq_t_of(size_type id, size_type d) const
  {
    size_type cur = id;
    while(this->nodes[cur].tdepth > d) { cur = this->nodes[cur].parent; }
    return cur;
  }

private:
  size_type build(size_type sp, size_type ep, size_type pid, size_type td)
  {
    size_type id = this->nodes.size();
    node nd;
    nd.iv = { sp, ep };
    nd.parent = pid;
    nd.tdepth = td;
    if(sp == ep) { nd.depth = this->n() - this->sa[sp - 1] + 1; }
    else
    {
      nd.depth = this->lcp[sp];
      for(size_type j = sp + 2; j <= ep; j++) { nd.depth = std::min(nd.depth, this->lcp[j - 1]); }
    }
    this->nodes.push_back(nd);
    this->ids[{ sp, ep }] = id;
    if(sp < ep)
    {
      size_type depth = nd.depth, csp = sp;
      for(size_type j = sp + 1; j <= ep; j++)
      {
        if(this->lcp[j - 1] == depth)
        {
          size_type cid = this->build(csp, j - 1, id, td + 1);
          this->nodes[id].children.push_back(cid);
          csp = j;
        }
      }
      size_type cid = this->build(csp, ep, id, td + 1);
      this->nodes[id].children.push_back(cid);
    }
    return id;
  }
};

// Brute-force maximal substrings of a query in the oracle's text: the
// longest match per query position, reported when it extends a maximal match
// neither to the left nor to the right. The endmarker byte never matches.
inline std::vector<maximal_match> maximal_substrings(const tree_oracle& T, const text_type& query)
{
  size_type q = query.size(), n = T.n();
  std::vector<size_type> ms(q + 1, 0);
  std::vector<st_node> node_of(q + 1);
  for(size_type i = 1; i <= q; i++)
  {
    std::vector<size_type> len_at(n + 1, 0);
    for(size_type p = 1; p <= n; p++)
    {
      size_type len = 0;
      while(i + len <= q && p + len <= n
            && query[i + len - 1] != ENDMARKER
            && query[i + len - 1] == T.text[p + len - 1]) { len++; }
      len_at[p] = len;
      ms[i] = std::max(ms[i], len);
    }
    if(ms[i] > 0)
    {
      size_type lo = n + 1, hi = 0;
      for(size_type p = 1; p <= n; p++)
      {
        if(len_at[p] >= ms[i])
        {
          lo = std::min(lo, T.isa[p - 1]);
          hi = std::max(hi, T.isa[p - 1]);
        }
      }
      node_of[i] = { lo, hi };
    }
  }
  std::vector<maximal_match> res;
  for(size_type i = 1; i <= q; i++)
  {
    if(ms[i] > 0 && (i == 1 || ms[i - 1] <= ms[i])) { res.push_back({ i, ms[i], node_of[i] }); }
  }
  return res;
}

} // namespace rst::oracle

#endif // RST_TESTS_TREE_ORACLE_HPP
