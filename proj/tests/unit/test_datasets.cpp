/**
 * Copyright 2026 The ArchNet Toolkit Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <set>

#include "oracles.hpp"
#include "tae/data/dataset.hpp"
#include "tae/data/formats.hpp"
#include "tae/data/synth.hpp"
#include "tae/error.hpp"
#include "tae/io/binary.hpp"

namespace tae::data {
namespace {

const std::filesystem::path kFixtures{TAE_FIXTURE_DIR};

TEST(Idx, FixtureExactValues) {
  const Dataset d = load_idx(kFixtures / "two_4x4-images.idx", kFixtures / "two_4x4-labels.idx");
  ASSERT_EQ(d.size(), 2u);
  EXPECT_EQ(d.images.shape(), (Shape{2, 1, 4, 4}));
  EXPECT_EQ(d.labels, (std::vector<int>{3, 7}));
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t r = 0; r < 4; ++r)
      for (std::size_t c = 0; c < 4; ++c) {
        const double raw = static_cast<double>((i * 16 + r * 4 + c) * 7 % 256);
        EXPECT_DOUBLE_EQ(d.images.at(i, 0, r, c), raw / 255.0);
      }
}

TEST(Idx, BadMagicAndCountMismatch) {
  io::Bytes img = io::read_file(kFixtures / "two_4x4-images.idx");
  io::Bytes lbl = io::read_file(kFixtures / "two_4x4-labels.idx");
  io::Bytes bad = img;
  bad[3] = 0x01;
  EXPECT_THROW(decode_idx(bad, lbl), ParseError);
  io::Bytes short_lbl = lbl;
  short_lbl[7] = 3;  // N = 3
  short_lbl.push_back(1);
  EXPECT_THROW(decode_idx(img, short_lbl), Error);
  io::Bytes truncated(img.begin(), img.end() - 1);
  EXPECT_THROW(decode_idx(truncated, lbl), ParseError);
}

TEST(Idx, RoundTrip) {
  const Dataset d = synth_shapes(12, 5);
  testing::TempDir dir("idx");
  write_idx(d, dir / "i.idx", dir / "l.idx");
  const Dataset back = load_idx(dir / "i.idx", dir / "l.idx");
  EXPECT_EQ(back.labels, d.labels);
  for (std::size_t k = 0; k < d.images.numel(); ++k) {
    EXPECT_NEAR(back.images[k], d.images[k], 0.5 / 255.0 + 1e-12);
  }
}

TEST(Cifar, FixtureExactValues) {
  const Dataset d = load_cifar10(kFixtures / "two_records.cifar");
  ASSERT_EQ(d.size(), 2u);
  EXPECT_EQ(d.images.shape(), (Shape{2, 3, 32, 32}));
  EXPECT_EQ(d.labels, (std::vector<int>{3, 9}));
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t k = 0; k < 3072; ++k) {
      EXPECT_DOUBLE_EQ(d.images[i * 3072 + k], static_cast<double>((i * 3072 + k) * 13 % 256) / 255.0);
    }
}

TEST(Cifar, EmptyFileAndRejections) {
  EXPECT_EQ(decode_cifar10(io::Bytes{}).size(), 0u);
  io::Bytes b = io::read_file(kFixtures / "two_records.cifar");
  io::Bytes ragged(b.begin(), b.end() - 1);
  EXPECT_THROW(decode_cifar10(ragged), ParseError);
  b[0] = 10;
  EXPECT_THROW(decode_cifar10(b), Error);
}

TEST(Cifar, RoundTrip) {
  const Dataset d = load_cifar10(kFixtures / "two_records.cifar");
  EXPECT_EQ(encode_cifar10(d), io::read_file(kFixtures / "two_records.cifar"));
}

TEST(Synth, BalancedDeterministicInRange) {
  const Dataset a = synth_shapes(40, 9), b = synth_shapes(40, 9), c = synth_shapes(40, 10);
  EXPECT_EQ(a.images, b.images);
  EXPECT_NE(a.images, c.images);
  EXPECT_EQ(class_counts(a), (std::vector<std::size_t>{10, 10, 10, 10}));
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_EQ(a.labels[i], static_cast<int>(i % 4));
  EXPECT_NO_THROW(validate_pixels(a));
  EXPECT_THROW(synth_shapes(3, 1), Error);
}

TEST(Split, RatioParsing) {
  const SplitRatio r = parse_ratio("5:1");
  EXPECT_EQ(r.train, 5u);
  EXPECT_EQ(r.val, 1u);
  EXPECT_THROW(parse_ratio("5"), Error);
  EXPECT_THROW(parse_ratio("0:1"), Error);
  EXPECT_THROW(parse_ratio("a:b"), Error);
}

struct SplitCase {
  std::size_t n, a, b, train, val;
};

TEST(Split, Examples) {
  for (const SplitCase& c : {SplitCase{700, 6, 1, 600, 100}, SplitCase{600, 5, 1, 500, 100},
                             SplitCase{4, 1, 1, 2, 2}}) {
    const Dataset s = split(synth_shapes(c.n, 1), {c.a, c.b}, 2);
    ASSERT_TRUE(s.has_split());
    EXPECT_EQ(*s.train_count, c.train) << c.n;
    EXPECT_EQ(s.val_part().size(), c.val) << c.n;
  }
}

TEST(Split, PartitionAndStratification) {
  Dataset d = synth_shapes(103, 3);
  // Tag every row so the partition can be checked through the shuffle.
  for (std::size_t i = 0; i < d.size(); ++i) d.images[i * 64] = static_cast<double>(i) / 1000.0;
  const Dataset s = split(d, {5, 1}, 8);
  std::multiset<double> seen;
  for (std::size_t i = 0; i < s.size(); ++i) seen.insert(s.images[i * 64]);
  ASSERT_EQ(seen.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) EXPECT_EQ(seen.count(static_cast<double>(i) / 1000.0), 1u);
  const auto tc = class_counts(s.train_part()), vc = class_counts(s.val_part());
  const auto all = class_counts(d);
  for (std::size_t k = 0; k < 4; ++k) {
    EXPECT_EQ(tc[k] + vc[k], all[k]);
    EXPECT_NEAR(static_cast<double>(vc[k]), all[k] / 6.0, 1.0);
  }
  EXPECT_EQ(split(d, {5, 1}, 8).images, s.images);
  EXPECT_NE(split(d, {5, 1}, 9).images, s.images);
}

TEST(Aenc, RoundTripPreservesFloat32) {
  Dataset d = synth_shapes(8, 2);
  std::mt19937_64 rng(1);
  d.images = testing::random_tensor(Shape{8, 3, 5, 5}, rng, -4.0, 4.0);
  const Dataset back = decode_aenc(encode_aenc(d), 4);
  EXPECT_EQ(back.labels, d.labels);
  EXPECT_EQ(back.images.shape(), d.images.shape());
  for (std::size_t k = 0; k < d.images.numel(); ++k) {
    EXPECT_EQ(back.images[k], static_cast<double>(static_cast<float>(d.images[k])));
  }
  EXPECT_EQ(decode_aenc(encode_aenc(d)).num_classes, 4u);
}

TEST(Aenc, RejectsMutants) {
  const io::Bytes b = encode_aenc(synth_shapes(4, 2));
  for (std::size_t n = 0; n < b.size(); n += 7) {
    EXPECT_THROW(decode_aenc(std::span(b).first(n)), ParseError) << n;
  }
  for (std::size_t i = 0; i < b.size(); ++i) {
    io::Bytes m = b;
    m[i] ^= 0x10;
    EXPECT_THROW(decode_aenc(m), ParseError) << i;
  }
}

TEST(DatasetOps, PartsAndSubset) {
  const Dataset s = split(synth_shapes(12, 1), {2, 1}, 1);
  EXPECT_EQ(s.train_part().size() + s.val_part().size(), 12u);
  EXPECT_FALSE(s.train_part().has_split());
  const std::vector<std::size_t> rows{3, 0};
  const Dataset sub = s.subset(rows);
  EXPECT_EQ(sub.labels, (std::vector<int>{s.labels[3], s.labels[0]}));
  EXPECT_FALSE(sub.has_split());
  EXPECT_THROW(s.rows(5, 13), Error);
}

}  // namespace
}  // namespace tae::data
