#include <gtest/gtest.h>

#include "netcode/gf2k.hpp"
#include "oracles.hpp"

using netcode::BinPoly;
using netcode::Field;
using netcode::FieldElem;

namespace {

const Field kB1 = Field::primitive(BinPoly::parse("X^5+X^2+1"));
const Field kB2 = Field::primitive(BinPoly::parse("X^5+X^3+X^2+X+1"));
const Field kGF4 = Field::primitive(BinPoly::parse("X^2+X+1"));

}  // namespace

TEST(FieldSpec, PrimitivityOfExampleModuli) {
  EXPECT_EQ(kB1.order_of_x(), 31U);
  EXPECT_EQ(kB2.order_of_x(), 31U);
  EXPECT_TRUE(Field::primitive(BinPoly::parse("X^9+X^4+1")).is_primitive());
  // Irreducible but X has order 5.
  const Field f = Field::from_modulus(BinPoly::parse("X^4+X^3+X^2+X+1"));
  EXPECT_FALSE(f.is_primitive());
  EXPECT_EQ(f.order_of_x(), 5U);
  EXPECT_THROW(Field::primitive(BinPoly::parse("X^4+X^3+X^2+X+1")), netcode::InvalidArgument);
  EXPECT_THROW(Field::from_modulus(BinPoly::parse("X^2+1")), netcode::InvalidArgument);
  EXPECT_THROW(Field::from_modulus(BinPoly::parse("1")), netcode::InvalidArgument);
  EXPECT_THROW(Field::from_modulus(BinPoly::monomial(33) + BinPoly::parse("X^13+1")), netcode::InvalidArgument);
}

TEST(FieldSpec, FirstPrimitive) {
  EXPECT_EQ(Field::first_primitive(2).modulus(), BinPoly::parse("X^2+X+1"));
  EXPECT_EQ(Field::first_primitive(3).modulus(), BinPoly::parse("X^3+X+1"));
  EXPECT_EQ(Field::first_primitive(5).modulus(), BinPoly::parse("X^5+X^2+1"));
  EXPECT_EQ(Field::first_primitive(9).modulus(), BinPoly::parse("X^9+X^4+1"));
  for (int k = 1; k <= 20; ++k) EXPECT_TRUE(Field::first_primitive(k).is_primitive()) << k;
}

TEST(FieldElem, FromPower) {
  EXPECT_TRUE(FieldElem::from_power(kB1, 0).is_one());
  EXPECT_EQ(FieldElem::from_power(kB1, 5).to_binpoly(), BinPoly::parse("X^2+1"));
  EXPECT_TRUE(FieldElem::from_power(kB1, 31).is_one());
  EXPECT_EQ(FieldElem::from_power(kB1, 33), FieldElem::from_power(kB1, 2));
}

TEST(FieldElem, Arithmetic) {
  const FieldElem b = FieldElem::from_power(kGF4, 1);
  EXPECT_EQ(b * b, FieldElem(kGF4, 0b11));
  EXPECT_EQ(b * b, FieldElem::from_power(kGF4, 2));
  EXPECT_TRUE((b + b).is_zero());
  EXPECT_EQ(b * FieldElem::one(kGF4), b);
  EXPECT_THROW(FieldElem::zero(kGF4).inverse(), netcode::InvalidArgument);
  EXPECT_THROW(FieldElem::one(kB1) + FieldElem::one(kB2), netcode::InvalidArgument);
  EXPECT_THROW(FieldElem::one(kB1) * FieldElem::one(kGF4), netcode::InvalidArgument);
}

TEST(FieldElem, TextForms) {
  EXPECT_EQ(FieldElem::from_power(kB1, 18).to_string(), "b^18");
  EXPECT_EQ(FieldElem::from_power(kB1, 1).to_string(), "b");
  EXPECT_EQ(FieldElem::zero(kB1).to_string(), "0");
  EXPECT_EQ(FieldElem::one(kB1).to_string(), "1");
  EXPECT_EQ(FieldElem::parse(kB1, "b^18"), FieldElem::from_power(kB1, 18));
  EXPECT_EQ(FieldElem::parse(kB1, "b"), FieldElem::from_power(kB1, 1));
  EXPECT_EQ(FieldElem::parse(kB1, "X^2+1"), FieldElem::from_power(kB1, 5));
  EXPECT_EQ(FieldElem::parse(kB1, "0x5"), FieldElem::from_power(kB1, 5));
  EXPECT_THROW(FieldElem::parse(kB1, "X^5"), netcode::InvalidArgument);
  EXPECT_THROW(FieldElem::parse(kB1, "b^x"), netcode::InvalidArgument);
  for (std::uint64_t r = 0; r < 32; ++r) {
    const FieldElem x(kB1, r);
    EXPECT_EQ(FieldElem::parse(kB1, x.to_string()), x);
    EXPECT_EQ(FieldElem::parse(kB1, x.to_hex()), x);
  }
  // A non-primitive modulus falls back to hex where no power of X reaches the element.
  const Field f = Field::from_modulus(BinPoly::parse("X^4+X^3+X^2+X+1"));
  EXPECT_EQ(FieldElem(f, 0b11).to_string(), "0x3");
}

TEST(FieldElem, Lift) {
  EXPECT_TRUE(FieldElem::zero(kB1).to_binpoly().is_zero());
  EXPECT_TRUE(FieldElem::one(kB1).to_binpoly().is_one());
  EXPECT_EQ(netcode::to_binpoly(FieldElem::from_power(kB1, 5)), BinPoly::parse("X^2+1"));
}

TEST(FieldElem, ReduceIntoField) {
  const BinPoly g = BinPoly::parse("X^2+X+1");
  EXPECT_EQ(netcode::reduce_into_field(BinPoly::parse("X^2+1"), g).to_binpoly(), BinPoly::parse("X"));
  EXPECT_TRUE(netcode::reduce_into_field(g, g).is_zero());
  EXPECT_EQ(netcode::reduce_into_field(BinPoly::parse("X+1"), g).to_binpoly(), BinPoly::parse("X+1"));
  EXPECT_THROW(netcode::reduce_into_field(BinPoly::parse("X"), BinPoly::parse("X^2+1")), netcode::InvalidArgument);
}

TEST(FieldProperty, AxiomsAgainstShiftAndAddOracle) {
  oracle::Gen gen(11);
  for (const Field& f : {kGF4, kB1, kB2, Field::primitive(BinPoly::parse("X^9+X^4+1")), Field::first_primitive(32)}) {
    for (int i = 0; i < 300; ++i) {
      const FieldElem a(f, gen.below(f.size()));
      const FieldElem b(f, gen.below(f.size()));
      const FieldElem c(f, gen.below(f.size()));
      EXPECT_EQ((a * b).residue(), oracle::field_mul(a.residue(), b.residue(), f.modulus_bits()));
      EXPECT_EQ(a * (b + c), a * b + a * c);
      EXPECT_EQ((a * b) * c, a * (b * c));
      if (!a.is_zero()) {
        EXPECT_TRUE((a * a.inverse()).is_one());
        EXPECT_EQ(a / a, FieldElem::one(f));
      }
    }
  }
}

TEST(FieldProperty, PowerLaw) {
  oracle::Gen gen(12);
  for (int n = 0; n < 200; ++n) {
    const std::uint64_t i = gen.below(1000), j = gen.below(1000);
    EXPECT_EQ(FieldElem::from_power(kB2, i + j), FieldElem::from_power(kB2, i) * FieldElem::from_power(kB2, j));
  }
}
