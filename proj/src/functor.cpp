#include "fmachina/functor.hpp"

#include <algorithm>

namespace fmachina {

namespace {

void check_in_base(const BaseObject& x, const BaseCategory& base, const std::string& who) {
  if (!(x.base() == base)) {
    throw DiagramError(who + ": object " + x.describe() + " does not live in " + base.describe());
  }
}

void check_endpoints(const BaseMorphism& f, const BaseObject& dom, const BaseObject& cod,
                     const std::string& who) {
  if (!(f.dom() == dom)) throw DiagramError(who + ": morphism domain does not match");
  if (!(f.cod() == cod)) throw DiagramError(who + ": morphism codomain does not match");
}

std::vector<int> digits_of(long long idx, int radix, int width) {
  std::vector<int> d(static_cast<size_t>(width));
  for (int k = width - 1; k >= 0; --k) {
    d[static_cast<size_t>(k)] = static_cast<int>(idx % radix);
    idx /= radix;
  }
  return d;
}

long long index_of_digits(const std::vector<int>& d, int radix) {
  long long idx = 0;
  for (int v : d) idx = idx * radix + v;
  return idx;
}

AdjunctionSpecPtr clone_spec(const AdjunctionSpec& s) { return std::make_shared<AdjunctionSpec>(s); }

// ---------------------------------------------------------------------------
// Identity
// ---------------------------------------------------------------------------

class IdentityFunctor final : public Functor {
 public:
  explicit IdentityFunctor(BaseCategory base) : base_(std::move(base)) {}
  const BaseCategory& source() const override { return base_; }
  const BaseCategory& target() const override { return base_; }
  BaseObject apply(const BaseObject& x) const override {
    check_in_base(x, base_, "identity functor");
    return x;
  }
  BaseMorphism apply(const BaseMorphism& f) const override {
    check_in_base(f.dom(), base_, "identity functor");
    return f;
  }
  std::string describe() const override { return "identity"; }

 private:
  BaseCategory base_;
};

class IdentityAdjunction final : public Adjunction {
 public:
  IdentityAdjunction(const BaseCategory& base, AdjunctionSpec spec)
      : left_(std::make_shared<IdentityFunctor>(base)), right_(left_), spec_(std::move(spec)) {}

  const FunctorPtr& left() const override { return left_; }
  const FunctorPtr& right() const override { return right_; }
  const AdjunctionSpec& spec() const override { return spec_; }

  BaseMorphism transpose(const BaseObject& x, const BaseObject& y,
                         const BaseMorphism& f) const override {
    check_endpoints(f, x, y, "transpose");
    return f;
  }
  BaseMorphism transpose_inv(const BaseObject& x, const BaseObject& y,
                             const BaseMorphism& g) const override {
    check_endpoints(g, x, y, "inverse transpose");
    return g;
  }

 private:
  FunctorPtr left_, right_;
  AdjunctionSpec spec_;
};

// ---------------------------------------------------------------------------
// Pairing with a fixed input object / tables over it
// ---------------------------------------------------------------------------

class PairWithInputFunctor final : public Functor {
 public:
  explicit PairWithInputFunctor(BaseObject input) : input_(std::move(input)) {}

  const BaseCategory& source() const override { return input_.base(); }
  const BaseCategory& target() const override { return input_.base(); }

  BaseObject apply(const BaseObject& x) const override {
    check_in_base(x, input_.base(), describe());
    return product_cone(x, input_).apex;
  }

  BaseMorphism apply(const BaseMorphism& f) const override {
    BaseObject fd = apply(f.dom());
    BaseObject fc = apply(f.cod());
    const int isz = input_.size();
    std::vector<int> table(static_cast<size_t>(fd.size()));
    for (int j = 0; j < f.dom().size(); ++j) {
      for (int k = 0; k < isz; ++k) {
        table[static_cast<size_t>(j * isz + k)] = f.apply_index(j) * isz + k;
      }
    }
    return BaseMorphism(std::move(fd), std::move(fc), std::move(table));
  }

  std::string describe() const override { return "pair with " + input_.describe(); }

 private:
  BaseObject input_;
};

class TablesOverInputFunctor final : public Functor {
 public:
  explicit TablesOverInputFunctor(BaseObject input) : input_(std::move(input)) {}

  const BaseCategory& source() const override { return input_.base(); }
  const BaseCategory& target() const override { return input_.base(); }

  BaseObject apply(const BaseObject& y) const override {
    check_in_base(y, input_.base(), describe());
    const int isz = input_.size();
    const int ysz = y.size();
    const long long bound = size_guard().object_bound;
    guard_object_size(clamped_pow(ysz, isz, bound), "table object");

    std::vector<std::string> names;
    if (isz == 0) {
      names.push_back(table_name({}));
    } else if (ysz > 0) {
      std::vector<int> digits(static_cast<size_t>(isz), 0);
      while (true) {
        std::vector<std::string> images(static_cast<size_t>(isz));
        for (int k = 0; k < isz; ++k) images[static_cast<size_t>(k)] = y.element(digits[static_cast<size_t>(k)]);
        names.push_back(table_name(images));
        int pos = isz - 1;
        while (pos >= 0) {
          if (++digits[static_cast<size_t>(pos)] < ysz) break;
          digits[static_cast<size_t>(pos)] = 0;
          --pos;
        }
        if (pos < 0) break;
      }
    }
    return BaseObject::plain(std::move(names));
  }

  BaseMorphism apply(const BaseMorphism& g) const override {
    BaseObject rd = apply(g.dom());
    BaseObject rc = apply(g.cod());
    const int isz = input_.size();
    const int ysz = g.dom().size();
    const int zsz = g.cod().size();
    std::vector<int> table(static_cast<size_t>(rd.size()));
    for (int i = 0; i < rd.size(); ++i) {
      std::vector<int> d = digits_of(i, ysz, isz);
      for (int& v : d) v = g.apply_index(v);
      table[static_cast<size_t>(i)] = static_cast<int>(index_of_digits(d, zsz));
    }
    return BaseMorphism(std::move(rd), std::move(rc), std::move(table));
  }

  std::string describe() const override { return "tables over " + input_.describe(); }

 private:
  BaseObject input_;
};

class InputProductAdjunction final : public Adjunction {
 public:
  InputProductAdjunction(BaseObject input, AdjunctionSpec spec)
      : input_(std::move(input)),
        left_(std::make_shared<PairWithInputFunctor>(input_)),
        right_(std::make_shared<TablesOverInputFunctor>(input_)),
        spec_(std::move(spec)) {}

  const FunctorPtr& left() const override { return left_; }
  const FunctorPtr& right() const override { return right_; }
  const AdjunctionSpec& spec() const override { return spec_; }

  BaseMorphism transpose(const BaseObject& x, const BaseObject& y,
                         const BaseMorphism& f) const override {
    BaseObject fx = left_->apply(x);
    check_endpoints(f, fx, y, "transpose");
    BaseObject ry = right_->apply(y);
    const int isz = input_.size();
    const int ysz = y.size();
    std::vector<int> table(static_cast<size_t>(x.size()));
    for (int j = 0; j < x.size(); ++j) {
      std::vector<int> d(static_cast<size_t>(isz));
      for (int k = 0; k < isz; ++k) d[static_cast<size_t>(k)] = f.apply_index(j * isz + k);
      table[static_cast<size_t>(j)] = static_cast<int>(index_of_digits(d, ysz));
    }
    return BaseMorphism(x, std::move(ry), std::move(table));
  }

  BaseMorphism transpose_inv(const BaseObject& x, const BaseObject& y,
                             const BaseMorphism& g) const override {
    BaseObject ry = right_->apply(y);
    check_endpoints(g, x, ry, "inverse transpose");
    BaseObject fx = left_->apply(x);
    const int isz = input_.size();
    const int ysz = y.size();
    std::vector<int> table(static_cast<size_t>(fx.size()));
    for (int j = 0; j < x.size(); ++j) {
      std::vector<int> d = digits_of(g.apply_index(j), ysz, isz);
      for (int k = 0; k < isz; ++k) table[static_cast<size_t>(j * isz + k)] = d[static_cast<size_t>(k)];
    }
    return BaseMorphism(std::move(fx), y, std::move(table));
  }

 private:
  BaseObject input_;
  FunctorPtr left_, right_;
  AdjunctionSpec spec_;
};

// ---------------------------------------------------------------------------
// Composite
// ---------------------------------------------------------------------------

class CompositeFunctor final : public Functor {
 public:
  CompositeFunctor(FunctorPtr outer, FunctorPtr inner)
      : outer_(std::move(outer)), inner_(std::move(inner)) {
    if (!(inner_->target() == outer_->source())) {
      throw DiagramError("composite functor: inner target differs from outer source");
    }
  }

  const BaseCategory& source() const override { return inner_->source(); }
  const BaseCategory& target() const override { return outer_->target(); }
  BaseObject apply(const BaseObject& x) const override { return outer_->apply(inner_->apply(x)); }
  BaseMorphism apply(const BaseMorphism& f) const override {
    return outer_->apply(inner_->apply(f));
  }
  std::string describe() const override {
    return "(" + outer_->describe() + " after " + inner_->describe() + ")";
  }

 private:
  FunctorPtr outer_, inner_;
};

class CompositeAdjunction final : public Adjunction {
 public:
  CompositeAdjunction(AdjunctionPtr outer, AdjunctionPtr inner, AdjunctionSpec spec)
      : outer_(std::move(outer)), inner_(std::move(inner)), spec_(std::move(spec)) {
    left_ = std::make_shared<CompositeFunctor>(outer_->left(), inner_->left());
    right_ = std::make_shared<CompositeFunctor>(inner_->right(), outer_->right());
  }

  const FunctorPtr& left() const override { return left_; }
  const FunctorPtr& right() const override { return right_; }
  const AdjunctionSpec& spec() const override { return spec_; }

  BaseMorphism transpose(const BaseObject& x, const BaseObject& y,
                         const BaseMorphism& f) const override {
    BaseObject fix = inner_->left()->apply(x);
    BaseMorphism step = outer_->transpose(fix, y, f);
    return inner_->transpose(x, step.cod(), step);
  }

  BaseMorphism transpose_inv(const BaseObject& x, const BaseObject& y,
                             const BaseMorphism& g) const override {
    BaseObject roy = outer_->right()->apply(y);
    BaseMorphism step = inner_->transpose_inv(x, roy, g);
    BaseObject fix = inner_->left()->apply(x);
    return outer_->transpose_inv(fix, y, step);
  }

 private:
  AdjunctionPtr outer_, inner_;
  FunctorPtr left_, right_;
  AdjunctionSpec spec_;
};

// ---------------------------------------------------------------------------
// Iterate
// ---------------------------------------------------------------------------

class IterateFunctor final : public Functor {
 public:
  IterateFunctor(FunctorPtr of, int power) : of_(std::move(of)), power_(power) {}

  const BaseCategory& source() const override { return of_->source(); }
  const BaseCategory& target() const override { return of_->source(); }

  BaseObject apply(const BaseObject& x) const override {
    BaseObject cur = x;
    check_in_base(cur, of_->source(), describe());
    for (int k = 0; k < power_; ++k) cur = of_->apply(cur);
    return cur;
  }

  BaseMorphism apply(const BaseMorphism& f) const override {
    BaseMorphism cur = f;
    check_in_base(cur.dom(), of_->source(), describe());
    for (int k = 0; k < power_; ++k) cur = of_->apply(cur);
    return cur;
  }

  std::string describe() const override {
    return "iterate(" + of_->describe() + ", " + std::to_string(power_) + ")";
  }

 private:
  FunctorPtr of_;
  int power_;
};

class IterateAdjunction final : public Adjunction {
 public:
  IterateAdjunction(AdjunctionPtr of, int power, AdjunctionSpec spec)
      : of_(std::move(of)), power_(power), spec_(std::move(spec)) {
    left_ = std::make_shared<IterateFunctor>(of_->left(), power_);
    right_ = std::make_shared<IterateFunctor>(of_->right(), power_);
  }

  const FunctorPtr& left() const override { return left_; }
  const FunctorPtr& right() const override { return right_; }
  const AdjunctionSpec& spec() const override { return spec_; }

  BaseMorphism transpose(const BaseObject& x, const BaseObject& y,
                         const BaseMorphism& f) const override {
    std::vector<BaseObject> xs{x};
    for (int k = 0; k < power_; ++k) xs.push_back(of_->left()->apply(xs.back()));
    check_endpoints(f, xs.back(), y, "transpose");
    BaseMorphism cur = f;
    BaseObject ycur = y;
    for (int k = power_ - 1; k >= 0; --k) {
      cur = of_->transpose(xs[static_cast<size_t>(k)], ycur, cur);
      ycur = cur.cod();
    }
    return cur;
  }

  BaseMorphism transpose_inv(const BaseObject& x, const BaseObject& y,
                             const BaseMorphism& g) const override {
    std::vector<BaseObject> ys{y};
    for (int k = 0; k < power_; ++k) ys.push_back(of_->right()->apply(ys.back()));
    check_endpoints(g, x, ys.back(), "inverse transpose");
    BaseMorphism cur = g;
    for (int k = power_ - 1; k >= 0; --k) {
      cur = of_->transpose_inv(cur.dom(), ys[static_cast<size_t>(k)], cur);
    }
    return cur;
  }

 private:
  AdjunctionPtr of_;
  int power_;
  FunctorPtr left_, right_;
  AdjunctionSpec spec_;
};

// ---------------------------------------------------------------------------
// Base change along a monoid homomorphism f : M -> N
// ---------------------------------------------------------------------------

/// Restriction of an N-set to an M-set through f.
class RestrictionFunctor final : public Functor {
 public:
  explicit RestrictionFunctor(MonoidHomPtr hom)
      : hom_(std::move(hom)), source_{hom_->cod()}, target_{hom_->dom()} {}

  const BaseCategory& source() const override { return source_; }
  const BaseCategory& target() const override { return target_; }

  BaseObject apply(const BaseObject& y) const override {
    check_in_base(y, source_, describe());
    const int msize = hom_->dom()->size();
    std::vector<std::vector<int>> rows(static_cast<size_t>(msize),
                                       std::vector<int>(static_cast<size_t>(y.size())));
    for (int m = 0; m < msize; ++m) {
      const int n = hom_->apply_index(m);
      for (int i = 0; i < y.size(); ++i) rows[static_cast<size_t>(m)][static_cast<size_t>(i)] = y.act(n, i);
    }
    return BaseObject::with_action(y.elements(), hom_->dom(), std::move(rows));
  }

  BaseMorphism apply(const BaseMorphism& f) const override {
    return BaseMorphism(apply(f.dom()), apply(f.cod()), f.table());
  }

  std::string describe() const override { return "restriction along a monoid map"; }

 private:
  MonoidHomPtr hom_;
  BaseCategory source_, target_;
};

/// Extension data for one M-set: the N-set N x X, and the quotient that
/// identifies (n.f(m), x) with (n, m.x).
struct ExtensionData {
  BaseObject product;          // N x X, N acting on the left component
  BaseMorphism collapse;       // N x X -> extension
  std::vector<int> preimage;   // one product index per extension element
};

ExtensionData build_extension(const MonoidHom& hom, const BaseObject& x) {
  if (!(x.base() == BaseCategory{hom.dom()})) {
    throw DiagramError("extension: input does not live in the source category");
  }
  const auto& n_monoid = hom.cod();
  const int nsz = n_monoid->size();
  const int xsz = x.size();
  guard_object_size(static_cast<long long>(nsz) * xsz, "extension");

  std::vector<std::string> names;
  names.reserve(static_cast<size_t>(nsz * xsz));
  for (int n = 0; n < nsz; ++n) {
    for (int i = 0; i < xsz; ++i) names.push_back(pair_name(n_monoid->element(n), x.element(i)));
  }
  std::vector<std::vector<int>> rows(static_cast<size_t>(nsz),
                                     std::vector<int>(static_cast<size_t>(nsz * xsz)));
  for (int act = 0; act < nsz; ++act) {
    for (int n = 0; n < nsz; ++n) {
      for (int i = 0; i < xsz; ++i) {
        rows[static_cast<size_t>(act)][static_cast<size_t>(n * xsz + i)] =
            n_monoid->mult(act, n) * xsz + i;
      }
    }
  }
  BaseObject product = BaseObject::with_action(std::move(names), n_monoid, std::move(rows));

  std::vector<std::pair<int, int>> pairs;
  const int msize = hom.dom()->size();
  for (int n = 0; n < nsz; ++n) {
    for (int m = 0; m < msize; ++m) {
      for (int i = 0; i < xsz; ++i) {
        const int a = n_monoid->mult(n, hom.apply_index(m)) * xsz + i;
        const int b = n * xsz + x.act(m, i);
        pairs.emplace_back(a, b);
      }
    }
  }
  ColimitCocone cocone = quotient_cocone(Partition::from_pairs(product, pairs));

  std::vector<int> preimage(static_cast<size_t>(cocone.apex.size()), -1);
  for (int p = 0; p < product.size(); ++p) {
    const int target = cocone.legs[0].apply_index(p);
    if (preimage[static_cast<size_t>(target)] < 0) preimage[static_cast<size_t>(target)] = p;
  }
  return ExtensionData{std::move(product), std::move(cocone.legs[0]), std::move(preimage)};
}

class ExtensionFunctor final : public Functor {
 public:
  explicit ExtensionFunctor(MonoidHomPtr hom)
      : hom_(std::move(hom)), source_{hom_->dom()}, target_{hom_->cod()} {}

  const BaseCategory& source() const override { return source_; }
  const BaseCategory& target() const override { return target_; }

  BaseObject apply(const BaseObject& x) const override {
    check_in_base(x, source_, describe());
    return build_extension(*hom_, x).collapse.cod();
  }

  BaseMorphism apply(const BaseMorphism& f) const override {
    check_in_base(f.dom(), source_, describe());
    ExtensionData dd = build_extension(*hom_, f.dom());
    ExtensionData dc = build_extension(*hom_, f.cod());
    const int xsz = f.dom().size();
    const int csz = f.cod().size();
    std::vector<int> table(static_cast<size_t>(dd.collapse.cod().size()));
    for (size_t i = 0; i < table.size(); ++i) {
      const int p = dd.preimage[i];
      const int n = p / xsz;
      const int xi = p % xsz;
      table[i] = dc.collapse.apply_index(n * csz + f.apply_index(xi));
    }
    return BaseMorphism(dd.collapse.cod(), dc.collapse.cod(), std::move(table));
  }

  std::string describe() const override { return "extension along a monoid map"; }

 private:
  MonoidHomPtr hom_;
  BaseCategory source_, target_;
};

/// Lower base change: extension is left adjoint to restriction.
class LowerBaseChangeAdjunction final : public Adjunction {
 public:
  LowerBaseChangeAdjunction(MonoidHomPtr hom, AdjunctionSpec spec)
      : hom_(std::move(hom)),
        left_(std::make_shared<ExtensionFunctor>(hom_)),
        right_(std::make_shared<RestrictionFunctor>(hom_)),
        spec_(std::move(spec)) {}

  const FunctorPtr& left() const override { return left_; }
  const FunctorPtr& right() const override { return right_; }
  const AdjunctionSpec& spec() const override { return spec_; }

  BaseMorphism transpose(const BaseObject& x, const BaseObject& y,
                         const BaseMorphism& f) const override {
    ExtensionData data = build_extension(*hom_, x);
    check_endpoints(f, data.collapse.cod(), y, "transpose");
    BaseObject ry = right_->apply(y);
    const int unit = hom_->cod()->unit_index();
    std::vector<int> table(static_cast<size_t>(x.size()));
    for (int i = 0; i < x.size(); ++i) {
      table[static_cast<size_t>(i)] = f.apply_index(data.collapse.apply_index(unit * x.size() + i));
    }
    return BaseMorphism(x, std::move(ry), std::move(table));
  }

  BaseMorphism transpose_inv(const BaseObject& x, const BaseObject& y,
                             const BaseMorphism& g) const override {
    BaseObject ry = right_->apply(y);
    check_endpoints(g, x, ry, "inverse transpose");
    ExtensionData data = build_extension(*hom_, x);
    const int xsz = x.size();
    const BaseObject& ext = data.collapse.cod();
    std::vector<int> table(static_cast<size_t>(ext.size()));
    for (int i = 0; i < ext.size(); ++i) {
      const int p = data.preimage[static_cast<size_t>(i)];
      table[static_cast<size_t>(i)] = y.act(p / xsz, g.apply_index(p % xsz));
    }
    for (int p = 0; p < data.product.size(); ++p) {
      const int expected = y.act(p / xsz, g.apply_index(p % xsz));
      if (table[static_cast<size_t>(data.collapse.apply_index(p))] != expected) {
        throw InternalError("inverse transpose along extension is not well defined");
      }
    }
    return BaseMorphism(ext, y, std::move(table));
  }

 private:
  MonoidHomPtr hom_;
  FunctorPtr left_, right_;
  AdjunctionSpec spec_;
};

/// Equivariant-map data for one M-set: all equivariant maps from N (as an
/// M-set through f) into it, indexed by their full tables.
struct EquivariantMapsData {
  std::vector<std::vector<int>> tables;
  std::map<std::vector<int>, int> index;
  BaseObject object;  // as an N-set
};

BaseObject n_through_hom(const MonoidHom& hom) {
  const auto& n_monoid = hom.cod();
  const int nsz = n_monoid->size();
  std::vector<std::vector<int>> rows(static_cast<size_t>(hom.dom()->size()),
                                     std::vector<int>(static_cast<size_t>(nsz)));
  for (int m = 0; m < hom.dom()->size(); ++m) {
    for (int n = 0; n < nsz; ++n) {
      rows[static_cast<size_t>(m)][static_cast<size_t>(n)] = n_monoid->mult(hom.apply_index(m), n);
    }
  }
  return BaseObject::with_action(n_monoid->elements(), hom.dom(), std::move(rows));
}

EquivariantMapsData build_equivariant_maps(const MonoidHom& hom, const BaseObject& x) {
  if (!(x.base() == BaseCategory{hom.dom()})) {
    throw DiagramError("equivariant-map object: input does not live in the source category");
  }
  const auto& n_monoid = hom.cod();
  const int nsz = n_monoid->size();
  BaseObject n_obj = n_through_hom(hom);

  std::vector<std::vector<int>> tables;
  std::map<std::vector<int>, int> index;
  for (const BaseMorphism& h : enumerate_hom(n_obj, x)) {
    index.emplace(h.table(), static_cast<int>(tables.size()));
    tables.push_back(h.table());
  }
  guard_object_size(static_cast<long long>(tables.size()), "equivariant-map object");

  std::vector<std::string> names;
  names.reserve(tables.size());
  for (const auto& t : tables) {
    std::vector<std::string> images(static_cast<size_t>(nsz));
    for (int n = 0; n < nsz; ++n) images[static_cast<size_t>(n)] = x.element(t[static_cast<size_t>(n)]);
    names.push_back(table_name(images));
  }

  std::vector<std::vector<int>> rows(static_cast<size_t>(nsz), std::vector<int>(tables.size()));
  for (int act = 0; act < nsz; ++act) {
    for (size_t i = 0; i < tables.size(); ++i) {
      std::vector<int> moved(static_cast<size_t>(nsz));
      for (int n = 0; n < nsz; ++n) {
        moved[static_cast<size_t>(n)] = tables[i][static_cast<size_t>(n_monoid->mult(n, act))];
      }
      auto it = index.find(moved);
      if (it == index.end()) {
        throw InternalError("equivariant-map object is not closed under the action");
      }
      rows[static_cast<size_t>(act)][i] = it->second;
    }
  }
  BaseObject object = BaseObject::with_action(std::move(names), n_monoid, std::move(rows));
  return EquivariantMapsData{std::move(tables), std::move(index), std::move(object)};
}

class EquivariantMapsFunctor final : public Functor {
 public:
  explicit EquivariantMapsFunctor(MonoidHomPtr hom)
      : hom_(std::move(hom)), source_{hom_->dom()}, target_{hom_->cod()} {}

  const BaseCategory& source() const override { return source_; }
  const BaseCategory& target() const override { return target_; }

  BaseObject apply(const BaseObject& x) const override {
    check_in_base(x, source_, describe());
    return build_equivariant_maps(*hom_, x).object;
  }

  BaseMorphism apply(const BaseMorphism& f) const override {
    check_in_base(f.dom(), source_, describe());
    EquivariantMapsData dd = build_equivariant_maps(*hom_, f.dom());
    EquivariantMapsData dc = build_equivariant_maps(*hom_, f.cod());
    std::vector<int> table(dd.tables.size());
    for (size_t i = 0; i < dd.tables.size(); ++i) {
      std::vector<int> mapped = dd.tables[i];
      for (int& v : mapped) v = f.apply_index(v);
      auto it = dc.index.find(mapped);
      if (it == dc.index.end()) {
        throw InternalError("post-composition left the equivariant-map object");
      }
      table[i] = it->second;
    }
    return BaseMorphism(dd.object, dc.object, std::move(table));
  }

  std::string describe() const override { return "equivariant maps along a monoid map"; }

 private:
  MonoidHomPtr hom_;
  BaseCategory source_, target_;
};

/// Upper base change: restriction is left adjoint to the equivariant-map
/// functor.
class UpperBaseChangeAdjunction final : public Adjunction {
 public:
  UpperBaseChangeAdjunction(MonoidHomPtr hom, AdjunctionSpec spec)
      : hom_(std::move(hom)),
        left_(std::make_shared<RestrictionFunctor>(hom_)),
        right_(std::make_shared<EquivariantMapsFunctor>(hom_)),
        spec_(std::move(spec)) {}

  const FunctorPtr& left() const override { return left_; }
  const FunctorPtr& right() const override { return right_; }
  const AdjunctionSpec& spec() const override { return spec_; }

  BaseMorphism transpose(const BaseObject& x, const BaseObject& y,
                         const BaseMorphism& f) const override {
    BaseObject restricted = left_->apply(x);
    check_endpoints(f, restricted, y, "transpose");
    EquivariantMapsData data = build_equivariant_maps(*hom_, y);
    const int nsz = hom_->cod()->size();
    std::vector<int> table(static_cast<size_t>(x.size()));
    for (int i = 0; i < x.size(); ++i) {
      std::vector<int> t(static_cast<size_t>(nsz));
      for (int n = 0; n < nsz; ++n) t[static_cast<size_t>(n)] = f.apply_index(x.act(n, i));
      auto it = data.index.find(t);
      if (it == data.index.end()) throw InternalError("transpose left the equivariant-map object");
      table[static_cast<size_t>(i)] = it->second;
    }
    return BaseMorphism(x, data.object, std::move(table));
  }

  BaseMorphism transpose_inv(const BaseObject& x, const BaseObject& y,
                             const BaseMorphism& g) const override {
    EquivariantMapsData data = build_equivariant_maps(*hom_, y);
    check_endpoints(g, x, data.object, "inverse transpose");
    BaseObject restricted = left_->apply(x);
    const int unit = hom_->cod()->unit_index();
    std::vector<int> table(static_cast<size_t>(x.size()));
    for (int i = 0; i < x.size(); ++i) {
      table[static_cast<size_t>(i)] =
          data.tables[static_cast<size_t>(g.apply_index(i))][static_cast<size_t>(unit)];
    }
    return BaseMorphism(std::move(restricted), y, std::move(table));
  }

 private:
  MonoidHomPtr hom_;
  FunctorPtr left_, right_;
  AdjunctionSpec spec_;
};

}  // namespace

// ---------------------------------------------------------------------------
// Spec helpers
// ---------------------------------------------------------------------------

bool spec_equal(const AdjunctionSpec& a, const AdjunctionSpec& b) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case AdjunctionSpec::Kind::identity:
      return a.base && b.base && *a.base == *b.base;
    case AdjunctionSpec::Kind::input_product:
      return a.input && b.input && *a.input == *b.input;
    case AdjunctionSpec::Kind::composite:
      return a.outer && b.outer && a.inner && b.inner && spec_equal(*a.outer, *b.outer) &&
             spec_equal(*a.inner, *b.inner);
    case AdjunctionSpec::Kind::iterate:
      return a.of && b.of && a.power == b.power && spec_equal(*a.of, *b.of);
    case AdjunctionSpec::Kind::base_change_lower:
    case AdjunctionSpec::Kind::base_change_upper:
    case AdjunctionSpec::Kind::base_change_comonadic:
      return a.hom && b.hom && *a.hom == *b.hom;
  }
  return false;
}

std::string spec_describe(const AdjunctionSpec& spec) {
  switch (spec.kind) {
    case AdjunctionSpec::Kind::identity:
      return "identity";
    case AdjunctionSpec::Kind::input_product:
      return "input_product over " + (spec.input ? spec.input->describe() : "?");
    case AdjunctionSpec::Kind::composite:
      return "(" + (spec.outer ? spec_describe(*spec.outer) : "?") + " after " +
             (spec.inner ? spec_describe(*spec.inner) : "?") + ")";
    case AdjunctionSpec::Kind::iterate:
      return "iterate(" + (spec.of ? spec_describe(*spec.of) : "?") + ", " +
             std::to_string(spec.power) + ")";
    case AdjunctionSpec::Kind::base_change_lower:
      return "base_change_lower";
    case AdjunctionSpec::Kind::base_change_upper:
      return "base_change_upper";
    case AdjunctionSpec::Kind::base_change_comonadic:
      return "base_change_comonadic";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Factories
// ---------------------------------------------------------------------------

AdjunctionPtr identity_adjunction(const BaseCategory& base) {
  AdjunctionSpec spec;
  spec.kind = AdjunctionSpec::Kind::identity;
  spec.base = base;
  return std::make_shared<IdentityAdjunction>(base, std::move(spec));
}

AdjunctionPtr product_exponential_adjunction(const BaseObject& input) {
  if (input.is_mset()) {
    throw ValidationError("input-product functors are only available over finite sets");
  }
  AdjunctionSpec spec;
  spec.kind = AdjunctionSpec::Kind::input_product;
  spec.input = input;
  return std::make_shared<InputProductAdjunction>(input, std::move(spec));
}

AdjunctionPtr compose_adjunctions(const AdjunctionPtr& outer, const AdjunctionPtr& inner) {
  if (!outer || !inner) throw ValidationError("composite adjunction needs both parts");
  AdjunctionSpec spec;
  spec.kind = AdjunctionSpec::Kind::composite;
  spec.outer = clone_spec(outer->spec());
  spec.inner = clone_spec(inner->spec());
  return std::make_shared<CompositeAdjunction>(outer, inner, std::move(spec));
}

AdjunctionPtr iterate_adjunction(const AdjunctionPtr& of, int power) {
  if (!of) throw ValidationError("iterate adjunction needs a base adjunction");
  if (power < 0) throw ValidationError("iterate power must be non-negative");
  if (!of->is_endo()) throw DiagramError("iterate adjunction needs an endofunctor");
  AdjunctionSpec spec;
  spec.kind = AdjunctionSpec::Kind::iterate;
  spec.of = clone_spec(of->spec());
  spec.power = power;
  return std::make_shared<IterateAdjunction>(of, power, std::move(spec));
}

AdjunctionPtr base_change_lower(const MonoidHomPtr& hom) {
  if (!hom) throw ValidationError("base change needs a monoid homomorphism");
  AdjunctionSpec spec;
  spec.kind = AdjunctionSpec::Kind::base_change_lower;
  spec.hom = hom;
  return std::make_shared<LowerBaseChangeAdjunction>(hom, std::move(spec));
}

AdjunctionPtr base_change_upper(const MonoidHomPtr& hom) {
  if (!hom) throw ValidationError("base change needs a monoid homomorphism");
  AdjunctionSpec spec;
  spec.kind = AdjunctionSpec::Kind::base_change_upper;
  spec.hom = hom;
  return std::make_shared<UpperBaseChangeAdjunction>(hom, std::move(spec));
}

AdjunctionPtr base_change_comonadic(const MonoidHomPtr& hom) {
  if (!hom) throw ValidationError("base change needs a monoid homomorphism");
  AdjunctionSpec spec;
  spec.kind = AdjunctionSpec::Kind::base_change_comonadic;
  spec.hom = hom;
  AdjunctionPtr lower = base_change_lower(hom);
  AdjunctionPtr upper = base_change_upper(hom);
  return std::make_shared<CompositeAdjunction>(lower, upper, std::move(spec));
}

AdjunctionPtr build_adjunction(const AdjunctionSpec& spec) {
  switch (spec.kind) {
    case AdjunctionSpec::Kind::identity:
      if (!spec.base) throw ValidationError("identity adjunction needs a base category");
      return identity_adjunction(*spec.base);
    case AdjunctionSpec::Kind::input_product:
      if (!spec.input) throw ValidationError("input-product adjunction needs an input object");
      return product_exponential_adjunction(*spec.input);
    case AdjunctionSpec::Kind::composite:
      if (!spec.outer || !spec.inner) throw ValidationError("composite adjunction needs both parts");
      return compose_adjunctions(build_adjunction(*spec.outer), build_adjunction(*spec.inner));
    case AdjunctionSpec::Kind::iterate:
      if (!spec.of) throw ValidationError("iterate adjunction needs a base adjunction");
      return iterate_adjunction(build_adjunction(*spec.of), spec.power);
    case AdjunctionSpec::Kind::base_change_lower:
      return base_change_lower(spec.hom);
    case AdjunctionSpec::Kind::base_change_upper:
      return base_change_upper(spec.hom);
    case AdjunctionSpec::Kind::base_change_comonadic:
      return base_change_comonadic(spec.hom);
  }
  throw InternalError("unknown adjunction kind");
}

// ---------------------------------------------------------------------------
// Unit and counit
// ---------------------------------------------------------------------------

BaseMorphism unit(const Adjunction& adj, const BaseObject& x) {
  BaseObject fx = adj.left()->apply(x);
  return adj.transpose(x, fx, BaseMorphism::identity(fx));
}

BaseMorphism counit(const Adjunction& adj, const BaseObject& y) {
  BaseObject ry = adj.right()->apply(y);
  return adj.transpose_inv(ry, y, BaseMorphism::identity(ry));
}

}  // namespace fmachina
