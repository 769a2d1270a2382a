/*
 * wavelet_tree.hpp: Huffman-shaped wavelet tree.
 *
 * Generic over 32-bit symbols so the same structure serves byte sequences
 * (BWTs) and remapped token sequences (differential LCP arrays). Each internal
 * node holds a bitvector routing symbols to its children; codes are Huffman
 * codes with deterministic tie-breaking, so builds are reproducible.
 */

#ifndef RST_WAVELET_TREE_HPP
#define RST_WAVELET_TREE_HPP

#include <algorithm>
#include <map>
#include <queue>

#include "bitvector.hpp"

namespace rst {

class wavelet_tree
{
public:
  wavelet_tree() : n(0) {}

  explicit wavelet_tree(const std::vector<symbol_type>& seq) { this->build(seq); }

  size_type size() const { return this->n; }

  // Occurrences of c in the prefix of length i.
  size_type rank(symbol_type c, size_type i) const
  {
    if(i > this->n) { throw std::out_of_range("wavelet_tree::rank: position out of range"); }
    auto it = this->codes.find(c);
    if(it == this->codes.end()) { return 0; }
    const code_type& code = it->second;
    size_type node = ROOT, pos = i;
    for(size_type d = 0; d < code.length; d++)
    {
      bool b = (code.bits >> d) & 1;
      pos = this->nodes[node].bits.rank(pos, b);
      node = (b ? this->nodes[node].right : this->nodes[node].left);
    }
    return pos;
  }

  // Position of the j-th occurrence of c.
  size_type select(symbol_type c, size_type j) const
  {
    auto it = this->codes.find(c);
    if(it == this->codes.end() || j == 0 || j > this->nodes[it->second.leaf].count)
    {
      throw std::out_of_range("wavelet_tree::select: no such occurrence");
    }
    size_type node = it->second.leaf, pos = j;
    while(node != ROOT)
    {
      size_type parent = this->nodes[node].parent;
      pos = this->nodes[parent].bits.select(pos, this->nodes[parent].right == node);
      node = parent;
    }
    return pos;
  }

  symbol_type access(size_type i) const
  {
    if(i == 0 || i > this->n) { throw std::out_of_range("wavelet_tree::access: position out of range"); }
    size_type node = ROOT, pos = i;
    while(!this->nodes[node].is_leaf())
    {
      bool b = this->nodes[node].bits.bit(pos);
      pos = this->nodes[node].bits.rank(pos, b);
      node = (b ? this->nodes[node].right : this->nodes[node].left);
    }
    return this->nodes[node].symbol;
  }

  size_type count(symbol_type c) const
  {
    auto it = this->codes.find(c);
    return (it == this->codes.end() ? 0 : this->nodes[it->second.leaf].count);
  }

  // Distinct symbols in ascending order.
  std::vector<symbol_type> alphabet() const
  {
    std::vector<symbol_type> res;
    for(const auto& entry : this->codes) { res.push_back(entry.first); }
    return res;
  }

  void serialize(std::ostream& out) const
  {
    io::blob payload;
    payload.add_u64(this->n);
    payload.add_u64(this->nodes.size());
    for(const node_type& node : this->nodes)
    {
      payload.add_u64(node.left);
      payload.add_u64(node.right);
      payload.add_u64(node.parent);
      payload.add_u64(node.symbol);
      payload.add_u64(node.count);
      payload.add_structure(node.bits);
    }
    payload.write(out, TAG_WAVELET_TREE);
  }

  void load(std::istream& in)
  {
    io::reader reader(in, TAG_WAVELET_TREE);
    this->n = reader.u64();
    this->nodes.assign(reader.u64(), node_type());
    for(node_type& node : this->nodes)
    {
      node.left = reader.u64();
      node.right = reader.u64();
      node.parent = reader.u64();
      node.symbol = symbol_type(reader.u64());
      node.count = reader.u64();
      reader.structure(node.bits);
    }
    this->build_codes();
  }

private:
  static constexpr size_type ROOT = 0;
  static constexpr size_type NONE = std::numeric_limits<size_type>::max();

  struct node_type
  {
    size_type left = NONE, right = NONE, parent = NONE;
    symbol_type symbol = 0;
    size_type count = 0;
    bitvector bits;

    bool is_leaf() const { return this->left == NONE; }
  };

  // Root-to-leaf path, LSB first bit at the root.
  struct code_type
  {
    std::uint64_t bits = 0;
    size_type length = 0;
    size_type leaf = NONE;
  };

  void build(const std::vector<symbol_type>& seq)
  {
    this->n = seq.size();
    std::map<symbol_type, size_type> freq;
    for(symbol_type c : seq) { freq[c]++; }

    if(freq.size() <= 1)
    {
      node_type leaf;
      leaf.symbol = (freq.empty() ? 0 : freq.begin()->first);
      leaf.count = this->n;
      this->nodes.assign(1, leaf);
      this->build_codes();
      return;
    }

    // Huffman shape; ties broken by node creation order for determinism.
    struct heap_entry { size_type count, order, node; };
    auto cmp = [](const heap_entry& a, const heap_entry& b)
    {
      return a.count > b.count || (a.count == b.count && a.order > b.order);
    };
    std::priority_queue<heap_entry, std::vector<heap_entry>, decltype(cmp)> heap(cmp);

    std::vector<node_type> tree;
    size_type order = 0;
    for(const auto& entry : freq)
    {
      node_type leaf;
      leaf.symbol = entry.first;
      leaf.count = entry.second;
      tree.push_back(leaf);
      heap.push({ entry.second, order++, tree.size() - 1 });
    }
    while(heap.size() > 1)
    {
      heap_entry a = heap.top(); heap.pop();
      heap_entry b = heap.top(); heap.pop();
      node_type internal;
      internal.left = a.node; internal.right = b.node;
      internal.count = a.count + b.count;
      tree.push_back(internal);
      tree[a.node].parent = tree.size() - 1;
      tree[b.node].parent = tree.size() - 1;
      heap.push({ internal.count, order++, tree.size() - 1 });
    }

    // Reindex in reverse creation order: the root becomes node 0 and every
    // child gets a higher index than its parent.
    this->nodes.assign(tree.size(), node_type());
    std::vector<size_type> remap(tree.size());
    for(size_type i = 0; i < tree.size(); i++) { remap[i] = tree.size() - 1 - i; }
    for(size_type i = 0; i < tree.size(); i++)
    {
      node_type& node = this->nodes[remap[i]];
      node = tree[i];
      if(node.left != NONE) { node.left = remap[node.left]; node.right = remap[node.right]; }
      if(node.parent != NONE) { node.parent = remap[node.parent]; }
    }
    this->build_codes();

    // Route each node's subsequence to its children; parents precede children.
    std::vector<std::vector<symbol_type>> node_seq(this->nodes.size());
    node_seq[ROOT] = seq;
    std::vector<size_type> depth(this->nodes.size(), 0);
    for(size_type v = 0; v < this->nodes.size(); v++)
    {
      if(this->nodes[v].is_leaf()) { node_seq[v].clear(); continue; }
      std::vector<bool> bits;
      bits.reserve(node_seq[v].size());
      std::vector<symbol_type> left_seq, right_seq;
      for(symbol_type c : node_seq[v])
      {
        const code_type& code = this->codes.at(c);
        bool b = (code.bits >> depth[v]) & 1;
        bits.push_back(b);
        (b ? right_seq : left_seq).push_back(c);
      }
      this->nodes[v].bits = bitvector(bits);
      depth[this->nodes[v].left] = depth[v] + 1;
      depth[this->nodes[v].right] = depth[v] + 1;
      node_seq[this->nodes[v].left] = std::move(left_seq);
      node_seq[this->nodes[v].right] = std::move(right_seq);
      node_seq[v].clear();
    }
  }

  void build_codes()
  {
    this->codes.clear();
    for(size_type v = 0; v < this->nodes.size(); v++)
    {
      if(!this->nodes[v].is_leaf()) { continue; }
      code_type code;
      code.leaf = v;
      size_type node = v;
      while(this->nodes[node].parent != NONE)
      {
        size_type parent = this->nodes[node].parent;
        if(code.length >= WORD_BITS) { throw std::runtime_error("wavelet_tree: code length exceeds 64 bits"); }
        code.bits = (code.bits << 1) | (this->nodes[parent].right == node ? 1 : 0);
        code.length++;
        node = parent;
      }
      if(this->n > 0) { this->codes[this->nodes[v].symbol] = code; }
    }
  }

  size_type n;
  std::vector<node_type> nodes;
  std::map<symbol_type, code_type> codes;
};

} // namespace rst

#endif // RST_WAVELET_TREE_HPP
