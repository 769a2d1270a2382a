/*
 * suffix_tree.cpp: lcp-interval navigation and the traversal algorithms.
 */

#include <rst/suffix_tree.hpp>

#include <rst/text.hpp>

#include <stdexcept>
#include <string>

namespace rst {

suffix_tree::suffix_tree(const relative_fm& index, const rlcp_array& lcp,
                         const rselect* select_support) :
  index(&index), lcp(&lcp), rs(select_support)
{
  if(index.size() != lcp.size())
  {
    throw std::invalid_argument("suffix_tree: index and LCP array sizes differ");
  }
  if(!index.full())
  {
    throw std::invalid_argument("suffix_tree: the index must be the full variant");
  }
}

void suffix_tree::check_node(const st_node& v) const
{
  if(v.sp == 0 || v.sp > v.ep || v.ep > this->size())
  {
    throw std::invalid_argument("suffix_tree: invalid node [" + std::to_string(v.sp)
      + ", " + std::to_string(v.ep) + "]");
  }
}

size_type suffix_tree::locate_leaf(const st_node& v) const
{
  this->check_node(v);
  if(!this->is_leaf(v))
  {
    throw std::invalid_argument("suffix_tree::locate_leaf: not a leaf");
  }
  return this->index->locate(v.sp);
}

size_type suffix_tree::sdepth(const st_node& v) const
{
  this->check_node(v);
  if(this->is_leaf(v)) { return this->size() - this->index->locate(v.sp) + 1; }
  return this->lcp->rmq(v.sp + 1, v.ep).value;
}

st_node suffix_tree::expand(size_type x, size_type y) const
{
  position_value anchor = this->lcp->rmq(x + 1, y);
  size_type sp = std::max<size_type>(this->lcp->psv_threshold(anchor.position, anchor.value).position, 1);
  size_type ep = this->lcp->nsv_threshold(anchor.position, anchor.value).position - 1;
  return { sp, ep };
}

st_node suffix_tree::parent(const st_node& v) const
{
  this->check_node(v);
  if(v == this->root())
  {
    throw std::invalid_argument("suffix_tree::parent: the root has no parent");
  }
  // The parent's depth is the larger of the boundary LCP values; anchor the
  // psv/nsv expansion at the position holding it.
  size_type k = v.sp, bound = this->lcp->access(v.sp).value;
  if(v.ep < this->size())
  {
    size_type right = this->lcp->access(v.ep + 1).value;
    if(right > bound) { k = v.ep + 1; bound = right; }
  }
  size_type sp = std::max<size_type>(this->lcp->psv_threshold(k, bound).position, 1);
  size_type ep = this->lcp->nsv_threshold(k, bound).position - 1;
  return { sp, ep };
}

st_node suffix_tree::fchild(const st_node& v) const
{
  this->check_node(v);
  if(this->is_leaf(v))
  {
    throw std::invalid_argument("suffix_tree::fchild: a leaf has no children");
  }
  return { v.sp, this->lcp->rmq(v.sp + 1, v.ep).position - 1 };
}

std::optional<st_node> suffix_tree::next_sibling(const st_node& v, const st_node& parent) const
{
  if(v.ep >= parent.ep) { return std::nullopt; }
  // v.ep + 1 is an l-index of the parent; the sibling ends before the next
  // position with an LCP value at most the parent's depth.
  size_type start = v.ep + 1;
  return st_node{ start, this->lcp->nsev(start).position - 1 };
}

std::optional<st_node> suffix_tree::nsibling(const st_node& v) const
{
  this->check_node(v);
  if(v == this->root()) { return std::nullopt; }
  return this->next_sibling(v, this->parent(v));
}

st_node suffix_tree::lca(const st_node& v, const st_node& w) const
{
  this->check_node(v); this->check_node(w);
  if(this->ancestor(v, w)) { return v; }
  if(this->ancestor(w, v)) { return w; }
  return this->expand(std::min(v.sp, w.sp), std::max(v.ep, w.ep));
}

st_node suffix_tree::slink(const st_node& v) const
{
  this->check_node(v);
  if(v == this->root()) { return v; }
  if(this->is_leaf(v))
  {
    // The endmarker leaf is always first; its suffix link is the root.
    if(v.sp == 1) { return this->root(); }
    size_type x = this->index->psi(v.sp, this->rs);
    return { x, x };
  }
  return this->expand(this->index->psi(v.sp, this->rs), this->index->psi(v.ep, this->rs));
}

st_node suffix_tree::slink_k(const st_node& v, size_type k) const
{
  this->check_node(v);
  if(k == 0) { return v; }
  // Each suffix link loses one character, and slink(root) = root.
  if(k >= this->sdepth(v)) { return this->root(); }
  size_type x = this->index->isa(this->index->locate(v.sp) + k);
  if(this->is_leaf(v)) { return { x, x }; }
  size_type y = this->index->isa(this->index->locate(v.ep) + k);
  return this->expand(x, y);
}

byte_type suffix_tree::letter_at(size_type sp, size_type i) const
{
  size_type pos = sp;
  for(size_type step = 1; step < i; step++) { pos = this->index->psi(pos, this->rs); }
  return c_array_inverse(this->index->c_values(), pos);
}

byte_type suffix_tree::letter(const st_node& v, size_type i) const
{
  this->check_node(v);
  if(i == 0 || i > this->sdepth(v))
  {
    throw std::invalid_argument("suffix_tree::letter: no symbol at depth " + std::to_string(i));
  }
  return this->letter_at(v.sp, i);
}

std::optional<std::pair<st_node, size_type>> suffix_tree::child_at_depth(
    const st_node& v, size_type d, byte_type c) const
{
  if(this->is_leaf(v)) { return std::nullopt; }
  std::optional<st_node> w = this->fchild(v);
  while(w)
  {
    // Children are in alphabetic order of their edge labels.
    byte_type edge = this->letter_at(w->sp, d + 1);
    if(edge == c) { return std::make_pair(*w, this->sdepth(*w)); }
    if(edge > c) { return std::nullopt; }
    w = this->next_sibling(*w, v);
  }
  return std::nullopt;
}

std::optional<st_node> suffix_tree::child(const st_node& v, byte_type c) const
{
  this->check_node(v);
  if(this->is_leaf(v)) { return std::nullopt; }
  std::optional<std::pair<st_node, size_type>> res = this->child_at_depth(v, this->sdepth(v), c);
  if(!res) { return std::nullopt; }
  return res->first;
}

size_type suffix_tree::tdepth(const st_node& v) const
{
  this->check_node(v);
  size_type depth = 0;
  st_node cur = v;
  while(!(cur == this->root())) { cur = this->parent(cur); depth++; }
  return depth;
}

st_node suffix_tree::laq_s(const st_node& v, size_type d) const
{
  this->check_node(v);
  if(this->sdepth(v) < d)
  {
    throw std::invalid_argument("suffix_tree::laq_s: the node is too shallow");
  }
  st_node best = v, cur = v;
  while(!(cur == this->root()))
  {
    cur = this->parent(cur);
    if(this->sdepth(cur) < d) { break; }
    best = cur;
  }
  return best;
}

st_node suffix_tree::laq_t(const st_node& v, size_type d) const
{
  this->check_node(v);
  std::vector<st_node> chain{ v };
  while(!(chain.back() == this->root())) { chain.push_back(this->parent(chain.back())); }
  if(d >= chain.size())
  {
    throw std::invalid_argument("suffix_tree::laq_t: no ancestor at tree depth " + std::to_string(d));
  }
  return chain[chain.size() - 1 - d];
}

std::vector<maximal_match> suffix_tree::maximal_substrings_forward(const text_type& query) const
{
  std::vector<maximal_match> res;
  size_type q = query.size();
  // State: v is the locus of Q[i, i+d-1], p its parent when v is not the
  // root, dp/dv their string depths. Locus means sdepth(p) < d <= sdepth(v).
  st_node p = this->root(), v = p;
  size_type dp = 0, dv = 0, d = 0;
  size_type prev = 0;
  for(size_type i = 1; i <= q; i++)
  {
    while(i + d <= q)
    {
      byte_type c = query[i + d - 1];
      if(c == ENDMARKER) { break; }
      if(d == dv)
      {
        std::optional<std::pair<st_node, size_type>> step = this->child_at_depth(v, dv, c);
        if(!step) { break; }
        p = v; dp = dv;
        v = step->first; dv = step->second;
        d++;
      }
      else if(this->letter_at(v.sp, d + 1) == c) { d++; }
      else { break; }
    }
    if(d > 0 && (i == 1 || prev <= d)) { res.push_back({ i, d, v }); }
    prev = d;
    if(d == 0) { continue; }
    if(d == 1)
    {
      p = this->root(); dp = 0; v = p; dv = 0; d = 0;
      continue;
    }
    // Suffix link of the parent, then a skip-count descent to the locus of
    // Q[i+1, i+d-1]. The descent follows known query characters, so only the
    // child boundaries matter, not the edge labels.
    st_node a = this->slink(p);
    size_type da = (dp == 0 ? 0 : dp - 1);
    d--;
    while(da < d)
    {
      std::optional<std::pair<st_node, size_type>> step =
        this->child_at_depth(a, da, query[i + da]);
      if(!step)
      {
        throw std::logic_error("suffix_tree: lost the match during a suffix link shift");
      }
      if(step->second >= d)
      {
        p = a; dp = da;
        v = step->first; dv = step->second;
        break;
      }
      a = step->first; da = step->second;
    }
  }
  return res;
}

std::vector<maximal_match> suffix_tree::maximal_substrings_backward(const text_type& query) const
{
  size_type q = query.size();
  std::vector<size_type> ms(q + 1, 0);
  std::vector<st_node> locus(q + 1);
  st_node v = this->root();
  size_type d = 0;
  for(size_type i = q; i > 0; i--)
  {
    byte_type c = query[i - 1];
    if(c == ENDMARKER) { v = this->root(); d = 0; }
    else
    {
      while(true)
      {
        range_type next = this->index->backward_step({ v.sp, v.ep }, c);
        if(!empty_range(next)) { v = { next.first, next.second }; d++; break; }
        if(d == 0) { break; }
        // Shorten the match to the longest prefix that is a node label;
        // intermediate prefixes share the interval that already failed.
        v = this->parent(v);
        d = this->sdepth(v);
      }
    }
    ms[i] = d; locus[i] = v;
  }
  std::vector<maximal_match> res;
  for(size_type i = 1; i <= q; i++)
  {
    if(ms[i] > 0 && (i == 1 || ms[i - 1] <= ms[i])) { res.push_back({ i, ms[i], locus[i] }); }
  }
  return res;
}

} // namespace rst
