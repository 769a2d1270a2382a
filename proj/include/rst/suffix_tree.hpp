/*
 * suffix_tree.hpp: suffix tree operations over a relative FM-index and a
 * relative LCP array.
 *
 * Nodes are lcp-intervals [sp, ep] of the target suffix array: LCP[sp] < l,
 * LCP[i] >= l for sp < i <= ep with equality somewhere, and LCP[ep+1] < l,
 * where l is the string depth. Navigation reduces to rmq/nsv/psv on the LCP
 * array (the NPR method) plus Psi, LF and (inverse) suffix array steps on the
 * index. The tree itself is never materialized.
 *
 * On top of the node operations sit three traversal algorithms: a preorder
 * enumeration driven by fchild/nsibling with cached parents, and forward and
 * backward maximal-substring matching. Both matching algorithms compute
 * matching statistics of a query against the indexed text and report the
 * maximal matches; the forward one walks suffix links down the query, the
 * backward one LF-steps from its end, and their outputs are identical.
 */

#ifndef RST_SUFFIX_TREE_HPP
#define RST_SUFFIX_TREE_HPP

#include <optional>
#include <ostream>

#include <rst/relative_fm.hpp>
#include <rst/rlcp.hpp>

namespace rst {

// An lcp-interval; valid nodes come from suffix_tree operations.
struct st_node
{
  size_type sp = 0;
  size_type ep = 0;

  bool operator==(const st_node& other) const = default;
};

inline std::ostream& operator<<(std::ostream& out, const st_node& node)
{
  return out << "[" << node.sp << ", " << node.ep << "]";
}

// One maximal match of a query against the indexed text: query positions
// start .. start + length - 1 match string depth length at lcp-interval node.
struct maximal_match
{
  size_type start = 0;
  size_type length = 0;
  st_node node;

  bool operator==(const maximal_match& other) const = default;
};

inline std::ostream& operator<<(std::ostream& out, const maximal_match& match)
{
  return out << "(" << match.start << ", " << match.length << ", " << match.node << ")";
}

// A view over an index/LCP pair; does not own either. Any number of
// concurrent queries are safe, as the underlying structures are immutable.
class suffix_tree
{
public:
  // An optional rselect structure accelerates the Psi steps behind slink,
  // letter and child.
  suffix_tree(const relative_fm& index, const rlcp_array& lcp,
              const rselect* select_support = nullptr);

  size_type size() const { return this->index->size(); }

  st_node root() const { return { 1, this->size() }; }
  bool is_leaf(const st_node& v) const { return v.sp == v.ep; }
  bool ancestor(const st_node& v, const st_node& w) const
  {
    return v.sp <= w.sp && w.ep <= v.ep;
  }
  size_type count(const st_node& v) const { return v.ep - v.sp + 1; }

  // Text position of the suffix at leaf v.
  size_type locate_leaf(const st_node& v) const;

  // String depth: length of the path label.
  size_type sdepth(const st_node& v) const;

  // Smallest lcp-interval properly containing v; throws on the root.
  st_node parent(const st_node& v) const;

  // First child in alphabetic order; throws on leaves.
  st_node fchild(const st_node& v) const;

  // Next child of parent(v) after v; nullopt at the last child or the root.
  std::optional<st_node> nsibling(const st_node& v) const;

  // Smallest lcp-interval containing both nodes.
  st_node lca(const st_node& v, const st_node& w) const;

  // Node w with pi(v) = c pi(w); slink(root) = root.
  st_node slink(const st_node& v) const;

  // k-fold suffix link via one SA/ISA jump; the root once k >= sdepth(v).
  st_node slink_k(const st_node& v, size_type k) const;

  // Child of v whose edge label starts with c; nullopt if absent.
  std::optional<st_node> child(const st_node& v, byte_type c) const;

  // The i-th character of the path label, 1 <= i <= sdepth(v).
  byte_type letter(const st_node& v, size_type i) const;

  // Number of edges on the root path; a parent walk, O(depth) queries.
  size_type tdepth(const st_node& v) const;

  // Highest ancestor-or-self with string depth at least d; the root when
  // d = 0. Throws if sdepth(v) < d.
  st_node laq_s(const st_node& v, size_type d) const;

  // Ancestor at tree depth d; a parent walk. Throws if tdepth(v) < d.
  st_node laq_t(const st_node& v, size_type d) const;

  // Calls visit(node) for every node exactly once, in preorder. Parents are
  // kept on an explicit stack, so sibling steps need no parent queries.
  template<class Visit>
  void preorder(Visit&& visit) const
  {
    st_node v = this->root();
    visit(v);
    if(this->is_leaf(v)) { return; }
    std::vector<st_node> ancestors{ v };
    v = this->fchild(v); visit(v);
    while(true)
    {
      if(!this->is_leaf(v))
      {
        ancestors.push_back(v);
        v = this->fchild(v); visit(v);
        continue;
      }
      std::optional<st_node> next = this->next_sibling(v, ancestors.back());
      while(!next)
      {
        v = ancestors.back(); ancestors.pop_back();
        if(ancestors.empty()) { return; }
        next = this->next_sibling(v, ancestors.back());
      }
      v = *next; visit(v);
    }
  }

  // Maximal substrings of the query occurring in the indexed text, in query
  // order: matches extendable in neither direction, of length >= 1. The
  // forward walk descends with child/letter and shifts by suffix links; the
  // backward walk prepends characters by LF steps and shortens matches by
  // parent steps. Their outputs are identical. Query symbols absent from the
  // text alphabet, including the endmarker byte, never match and restart the
  // walk at depth 0.
  std::vector<maximal_match> maximal_substrings_forward(const text_type& query) const;
  std::vector<maximal_match> maximal_substrings_backward(const text_type& query) const;

private:
  // Smallest lcp-interval containing positions x < y: rmq anchor, then
  // psv/nsv expansion.
  st_node expand(size_type x, size_type y) const;

  // nsibling with the parent already known.
  std::optional<st_node> next_sibling(const st_node& v, const st_node& parent) const;

  // child() with sdepth(v) = d precomputed; also returns the child's depth,
  // which the forward matching walk needs anyway.
  std::optional<std::pair<st_node, size_type>> child_at_depth(
      const st_node& v, size_type d, byte_type c) const;

  // letter() without the depth check; i - 1 Psi steps from sp, then C-array
  // inversion.
  byte_type letter_at(size_type sp, size_type i) const;

  void check_node(const st_node& v) const;

  const relative_fm* index;
  const rlcp_array* lcp;
  const rselect* rs;
};

} // namespace rst

#endif // RST_SUFFIX_TREE_HPP
