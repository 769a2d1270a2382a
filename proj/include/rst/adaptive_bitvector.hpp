/*
 * adaptive_bitvector.hpp: bitvector that picks its own representation.
 *
 * Plain storage when the bit distribution is balanced; Elias-Fano over the
 * minority symbol when one value dominates; when the minority bits cluster
 * into runs, two Elias-Fano sequences (run starts and cumulative run
 * lengths) replace the per-position encoding. Alignment bitvectors between
 * similar sequences are almost all ones with the zeros bunched around the
 * edit sites, so the run encoding keeps them small without a dedicated
 * entropy coder.
 */

#ifndef RST_ADAPTIVE_BITVECTOR_HPP
#define RST_ADAPTIVE_BITVECTOR_HPP

#include <sstream>

#include "sparse_bitvector.hpp"

namespace rst {

class adaptive_bitvector
{
public:
  // Sparse encodings pay off below roughly one minority bit in eight.
  static constexpr size_type SPARSE_FRACTION = 8;

  adaptive_bitvector() : mode(MODE_PLAIN) {}

  explicit adaptive_bitvector(const std::vector<bool>& bits)
  {
    size_type n = bits.size(), ones = 0;
    for(bool b : bits) { ones += b; }
    size_type minority = std::min(ones, n - ones);
    if(n >= 64 && minority * SPARSE_FRACTION <= n)
    {
      bool stored = (ones <= n - ones);
      std::vector<size_type> positions;
      positions.reserve(minority);
      for(size_type i = 0; i < n; i++) { if(bits[i] == stored) { positions.push_back(i + 1); } }
      sparse_bitvector ef(positions, n);

      std::vector<size_type> starts, sums;
      for(size_type i = 0; i < positions.size(); i++)
      {
        if(i == 0 || positions[i] != positions[i - 1] + 1) { starts.push_back(positions[i]); }
        if(i + 1 == positions.size() || positions[i + 1] != positions[i] + 1) { sums.push_back(i + 1); }
      }

      if(!starts.empty())
      {
        sparse_bitvector rs(starts, n);
        sparse_bitvector rl(sums, minority);
        if(serialized_size(rs) + serialized_size(rl) < serialized_size(ef))
        {
          this->mode = (stored ? MODE_RUN_ONES : MODE_RUN_ZEROS);
          this->run_starts = std::move(rs);
          this->run_sums = std::move(rl);
          return;
        }
      }
      this->mode = (stored ? MODE_SPARSE_ONES : MODE_SPARSE_ZEROS);
      this->sparse = std::move(ef);
    }
    else
    {
      this->mode = MODE_PLAIN;
      this->plain = bitvector(bits);
    }
  }

  size_type size() const
  {
    switch(this->mode)
    {
      case MODE_PLAIN: return this->plain.size();
      case MODE_RUN_ONES: case MODE_RUN_ZEROS: return this->run_starts.size();
      default: return this->sparse.size();
    }
  }

  size_type count_ones() const
  {
    switch(this->mode)
    {
      case MODE_PLAIN: return this->plain.count_ones();
      case MODE_SPARSE_ONES: return this->sparse.count_ones();
      case MODE_SPARSE_ZEROS: return this->sparse.size() - this->sparse.count_ones();
      case MODE_RUN_ONES: return this->run_sums.size();
      default: return this->run_starts.size() - this->run_sums.size();
    }
  }

  bool bit(size_type i) const
  {
    switch(this->mode)
    {
      case MODE_PLAIN: return this->plain.bit(i);
      case MODE_SPARSE_ONES: return this->sparse.bit(i);
      case MODE_SPARSE_ZEROS: return !this->sparse.bit(i);
      case MODE_RUN_ONES: return this->stored_bit(i);
      default: return !this->stored_bit(i);
    }
  }

  size_type rank1(size_type i) const
  {
    switch(this->mode)
    {
      case MODE_PLAIN: return this->plain.rank1(i);
      case MODE_SPARSE_ONES: return this->sparse.rank1(i);
      case MODE_SPARSE_ZEROS: return i - this->sparse.rank1(i);
      case MODE_RUN_ONES: return this->stored_rank(i);
      default: return i - this->stored_rank(i);
    }
  }

  size_type rank0(size_type i) const { return i - this->rank1(i); }

  size_type rank(size_type i, bool v) const { return v ? this->rank1(i) : this->rank0(i); }

  size_type select1(size_type j) const
  {
    switch(this->mode)
    {
      case MODE_PLAIN: return this->plain.select1(j);
      case MODE_SPARSE_ONES: return this->sparse.select1(j);
      case MODE_SPARSE_ZEROS: return this->sparse.select0(j);
      case MODE_RUN_ONES: return this->stored_select(j);
      default: return this->other_select(j);
    }
  }

  size_type select0(size_type j) const
  {
    switch(this->mode)
    {
      case MODE_PLAIN: return this->plain.select0(j);
      case MODE_SPARSE_ONES: return this->sparse.select0(j);
      case MODE_SPARSE_ZEROS: return this->sparse.select1(j);
      case MODE_RUN_ONES: return this->other_select(j);
      default: return this->stored_select(j);
    }
  }

  size_type select(size_type j, bool v) const { return v ? this->select1(j) : this->select0(j); }

  // Representation actually chosen; exposed for tests.
  int encoding() const { return int(this->mode); }

  void serialize(std::ostream& out) const
  {
    io::blob payload;
    payload.add_u64(this->mode);
    switch(this->mode)
    {
      case MODE_PLAIN: payload.add_structure(this->plain); break;
      case MODE_RUN_ONES: case MODE_RUN_ZEROS:
        payload.add_structure(this->run_starts);
        payload.add_structure(this->run_sums);
        break;
      default: payload.add_structure(this->sparse); break;
    }
    payload.write(out, TAG_ADAPTIVE_BV);
  }

  void load(std::istream& in)
  {
    io::reader reader(in, TAG_ADAPTIVE_BV);
    this->mode = mode_type(reader.u64());
    switch(this->mode)
    {
      case MODE_PLAIN: reader.structure(this->plain); break;
      case MODE_RUN_ONES: case MODE_RUN_ZEROS:
        reader.structure(this->run_starts);
        reader.structure(this->run_sums);
        break;
      default: reader.structure(this->sparse); break;
    }
  }

private:
  enum mode_type : size_type
  {
    MODE_PLAIN = 0, MODE_SPARSE_ONES = 1, MODE_SPARSE_ZEROS = 2,
    MODE_RUN_ONES = 3, MODE_RUN_ZEROS = 4
  };

  template<class structure_type>
  static size_type serialized_size(const structure_type& s)
  {
    std::ostringstream out(std::ios::binary);
    s.serialize(out);
    return out.str().size();
  }

  // Run k covers positions [start_k, start_k + len_k - 1] of the stored
  // (minority) value; run_sums holds the cumulative lengths c_k, so
  // len_k = c_k - c_{k-1}. Maximal runs are separated by at least one
  // majority bit, which keeps e_k - c_k strictly increasing in k.

  size_type run_before(size_type k) const  // c_{k-1}
  {
    return k <= 1 ? 0 : this->run_sums.select1(k - 1);
  }

  bool stored_bit(size_type i) const
  {
    size_type k = this->run_starts.rank1(i);
    if(k == 0) { return false; }
    size_type len = this->run_sums.select1(k) - this->run_before(k);
    return i - this->run_starts.select1(k) < len;
  }

  size_type stored_rank(size_type i) const  // stored bits in [1, i]
  {
    size_type k = this->run_starts.rank1(i);
    if(k == 0) { return 0; }
    size_type before = this->run_before(k);
    size_type len = this->run_sums.select1(k) - before;
    return before + std::min(i - this->run_starts.select1(k) + 1, len);
  }

  size_type stored_select(size_type j) const  // position of the j-th stored bit
  {
    if(j == 0 || j > this->run_sums.size())
    {
      throw std::out_of_range("adaptive_bitvector: no such occurrence");
    }
    size_type k = this->run_sums.rank1(j - 1) + 1;
    return this->run_starts.select1(k) + (j - this->run_before(k)) - 1;
  }

  size_type other_select(size_type j) const  // position of the j-th majority bit
  {
    size_type r = this->run_starts.count_ones();
    size_type m = this->run_sums.size();
    if(j == 0 || j > this->run_starts.size() - m)
    {
      throw std::out_of_range("adaptive_bitvector: no such occurrence");
    }
    // Largest k with maj(k) = e_k - c_k < j; the answer then sits in the gap
    // after run k at position j + c_k.
    size_type lo = 1, hi = r, best = 0;
    while(lo <= hi)
    {
      size_type mid = lo + (hi - lo) / 2;
      size_type c = this->run_sums.select1(mid);
      size_type e = this->run_starts.select1(mid) + (c - this->run_before(mid)) - 1;
      if(e - c < j) { best = mid; lo = mid + 1; }
      else { hi = mid - 1; }
    }
    return j + (best == 0 ? 0 : this->run_sums.select1(best));
  }

  mode_type mode;
  bitvector plain;
  sparse_bitvector sparse;
  sparse_bitvector run_starts, run_sums;
};

} // namespace rst

#endif // RST_ADAPTIVE_BITVECTOR_HPP
