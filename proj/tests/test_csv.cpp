// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 corpusmatch contributors

#include "corpusmatch/csv.hpp"

#include <gtest/gtest.h>

using corpusmatch::csv::parse;
using corpusmatch::csv::ParseError;
using Rows = std::vector<std::vector<std::string>>;

TEST(Csv, PlainAndQuotedFields) {
  EXPECT_EQ(parse("a,b,c\n1,2,3\n"), (Rows{{"a", "b", "c"}, {"1", "2", "3"}}));
  EXPECT_EQ(parse("id,title\nB1,\"Hello, world\"\n"), (Rows{{"id", "title"}, {"B1", "Hello, world"}}));
  EXPECT_EQ(parse("x\n\"say \"\"hi\"\"\"\n"), (Rows{{"x"}, {"say \"hi\""}}));
  EXPECT_EQ(parse("x\n\"two\nlines\"\n"), (Rows{{"x"}, {"two\nlines"}}));
}

TEST(Csv, LineEndingsBlankLinesAndBom) {
  EXPECT_EQ(parse("\xEF\xBB\xBF" "a,b\r\n\r\n1,2"), (Rows{{"a", "b"}, {"1", "2"}}));
  EXPECT_EQ(parse("a,,\n"), (Rows{{"a", "", ""}}));
  EXPECT_TRUE(parse("").empty());
}

TEST(Csv, RejectsUnterminatedQuote) {
  EXPECT_THROW(parse("a\n\"oops\n"), ParseError);
  EXPECT_THROW(parse("a\"b\n"), ParseError);
}
