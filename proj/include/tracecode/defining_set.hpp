#pragma once

#include <algorithm>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "tracecode/field.hpp"

namespace tracecode {

enum class Ordering {
  Canonical,  ///< zero first, then ascending discrete log
  AsGiven,    ///< keep the caller's column order
};

/// A duplicate-free list of field elements indexing the coordinates of C_D.
class DefiningSet {
 public:
  DefiningSet(FieldPtr field, std::vector<FieldElement> elements, std::string label = {},
              Ordering ordering = Ordering::Canonical)
      : field_(std::move(field)), elements_(std::move(elements)), label_(std::move(label)) {
    if (!field_) throw std::invalid_argument("defining set needs a field");
    for (FieldElement x : elements_)
      if (!field_->contains(x)) throw std::invalid_argument("element does not belong to the field");
    sorted_ = elements_;
    std::sort(sorted_.begin(), sorted_.end(), [this](FieldElement a, FieldElement b) { return key(a) < key(b); });
    if (std::adjacent_find(sorted_.begin(), sorted_.end()) != sorted_.end())
      throw std::invalid_argument("defining set elements must be pairwise distinct");
    if (ordering == Ordering::Canonical) elements_ = sorted_;
  }

  const FieldContext& field() const { return *field_; }
  const FieldPtr& field_ptr() const { return field_; }
  std::span<const FieldElement> elements() const { return elements_; }
  std::size_t size() const { return elements_.size(); }
  bool empty() const { return elements_.empty(); }
  const std::string& label() const { return label_; }

  bool contains(FieldElement x) const {
    return std::binary_search(sorted_.begin(), sorted_.end(), x,
                              [this](FieldElement a, FieldElement b) { return key(a) < key(b); });
  }

  /// Membership flags indexed by FieldElement::packed.
  std::vector<bool> membership() const {
    std::vector<bool> in(field_->order(), false);
    for (FieldElement x : elements_) in[x.packed] = true;
    return in;
  }

  DefiningSet relabeled(std::string label) const {
    DefiningSet copy = *this;
    copy.label_ = std::move(label);
    return copy;
  }

 private:
  std::uint32_t key(FieldElement x) const { return field_->canonical_index(x); }

  FieldPtr field_;
  std::vector<FieldElement> elements_;
  std::vector<FieldElement> sorted_;
  std::string label_;
};

}  // namespace tracecode
