#include <gtest/gtest.h>

#include "phg/error.hpp"
#include "phg/program.hpp"
#include "phg/report.hpp"
#include "support/fixtures.hpp"

using namespace phg;

namespace {

ParseError parse_error(const std::string& text) {
  try {
    parse_program(text);
  } catch (const ParseError& e) {
    return e;
  }
  ADD_FAILURE() << "no parse error for:\n" << text;
  return ParseError(ErrorCode::InvalidArgument, {}, "");
}

}  // namespace

TEST(Program, ParsesTriangle) {
  Program p = parse_program(read_fixture("triangle.phg"));
  EXPECT_EQ(p.phg.node_count(), 5u);
  EXPECT_EQ(p.phg.edge_count(), 2u);
  ASSERT_TRUE(p.file.algebra);
  EXPECT_EQ(p.file.algebra->p, 3);
  EXPECT_EQ(p.file.algebra->r, 1);
  EXPECT_EQ(p.file.units, std::vector<std::string>{"m"});
  const PhgNode& area = p.phg.node(*p.phg.find_node("area"));
  EXPECT_EQ(area.kind, ValueKind::Scalar);
  ASSERT_TRUE(area.dimension);
  EXPECT_EQ(p.phg.edge(EdgeId{1}).payload.norm, NormMode::Measure);
  EXPECT_EQ(p.phg.edge(EdgeId{0}).label, "span");
  EXPECT_EQ(p.edge_locations[0].line, 11);
  EXPECT_EQ(p.node_locations[4].line, 9);
}

TEST(Program, EmptyFileIsValid) {
  Program p = parse_program("");
  EXPECT_EQ(p.phg.node_count(), 0u);
  Program c = parse_program("# nothing here\n\n   \n");
  EXPECT_EQ(c.phg.edge_count(), 0u);
  CheckReport r = check_program(p);
  EXPECT_FALSE(r.has_errors());
}

TEST(Program, ArityMismatchCarriesLocation) {
  ParseError e = parse_error("algebra Cl(3,0,1)\nnode p1 : mv grade=1\nnode x : mv\nedge join(p1) -> x\n");
  EXPECT_EQ(e.code(), ErrorCode::ArityMismatch);
  EXPECT_EQ(e.location().line, 4);
  EXPECT_GT(e.location().column, 0);
}

TEST(Program, ParseErrors) {
  EXPECT_EQ(parse_error("algebra Cl(3,0\n").code(), ErrorCode::SyntaxError);
  EXPECT_EQ(parse_error("algebra Cl(3,0,1)\nwidget w\n").code(), ErrorCode::UnknownKeyword);
  EXPECT_EQ(parse_error("algebra Cl(3,0,1)\nnode a : mv\nnode a : mv\n").code(), ErrorCode::DuplicateName);
  EXPECT_EQ(parse_error("algebra Cl(3,0,1)\nnode a : mv\nedge gp(a, b) -> a\n").code(), ErrorCode::UnresolvedReference);
  EXPECT_EQ(parse_error("algebra Cl(3,0,1)\nnode a : mv\nnode b : mv\nedge frob(a) -> b\n").code(),
            ErrorCode::UnknownKeyword);
  EXPECT_EQ(parse_error("algebra Cl(3,0,1)\nnode a : mv\nnode b : mv\nedge gp(a, a) -> b\nedge gp(b, b) -> a\n").code(),
            ErrorCode::CycleIntroduced);
  EXPECT_EQ(parse_error("algebra Cl(3,0,1)\nnode a : mv\nnode b : mv\nedge select[7](a) -> b\n").code(),
            ErrorCode::GradeOutOfRange);
  EXPECT_EQ(parse_error("algebra Cl(3,0,1)\nnode s : scalar grade=1\n").code(), ErrorCode::SyntaxError);
  EXPECT_EQ(parse_error("node a : mv\n").code(), ErrorCode::UnresolvedReference);
  ParseError open = parse_error("algebra Cl(3,0,1)\nnode a : mv\nnode o : mv\ncolocate g -> o {\n  members a\n");
  EXPECT_EQ(open.code(), ErrorCode::SyntaxError);
  EXPECT_EQ(open.location().line, 4);
}

TEST(Program, ForwardReferencesResolve) {
  Program p = parse_program("algebra Cl(2,0,0)\nedge gp(a, a) -> b\nnode a : mv grade=1\nnode b : mv\n");
  EXPECT_EQ(p.phg.edge_count(), 1u);
}

TEST(Program, SerializeRoundTrip) {
  for (const char* name : {"triangle.phg", "grade_conflict.phg", "unit_conflict.phg", "reduction_tree.phg"}) {
    ProgramFile f = parse_program_file(read_fixture(name));
    const std::string text = serialize(f);
    ProgramFile g = parse_program_file(text);
    EXPECT_EQ(f, g) << name;
    EXPECT_EQ(serialize(g), text) << name;
  }
}

TEST(Program, ColocationGroupParsed) {
  Program p = parse_program(read_fixture("reduction_tree.phg"));
  ASSERT_EQ(p.file.groups.size(), 1u);
  const ColocateDecl& g = p.file.groups[0];
  EXPECT_EQ(g.members.size(), 4u);
  EXPECT_EQ(g.routes.size(), 4u);
  EXPECT_EQ(g.dma.size(), 1u);
  EXPECT_EQ(g.sync, std::vector<std::string>{"reduce_D"});
  ASSERT_EQ(p.file.targets.size(), 1u);
  EXPECT_EQ(p.file.targets[0].model.rows, 3);
  EXPECT_EQ(p.file.targets[0].model.dma_channels, 2);
  EXPECT_EQ(p.phg.targets(), std::vector<std::string>{"npu"});
}

TEST(Check, TriangleIsClean) {
  Program p = parse_program(read_fixture("triangle.phg"));
  CheckReport r = check_program(p);
  EXPECT_FALSE(r.has_errors());
  EXPECT_EQ(r.saturation.rounds, 2u);
  const std::string text = to_text(r, "triangle.phg");
  EXPECT_NE(text.find("0 error(s)"), std::string::npos);
  EXPECT_EQ(text, to_text(check_program(p), "triangle.phg"));
}

TEST(Check, GradeConflictLocated) {
  Program p = parse_program(read_fixture("grade_conflict.phg"));
  CheckReport r = check_program(p);
  ASSERT_TRUE(r.has_errors());
  const std::string text = to_text(r, "g.phg");
  EXPECT_NE(text.find("g.phg:7:14: error:"), std::string::npos) << text;
  EXPECT_NE(text.find("[grade-disjoint]"), std::string::npos);
}

TEST(Check, UnitConflictLocated) {
  Program p = parse_program(read_fixture("unit_conflict.phg"));
  CheckReport r = check_program(p);
  ASSERT_TRUE(r.has_errors());
  const std::string text = to_text(r, "u.phg");
  EXPECT_NE(text.find("u.phg:8:"), std::string::npos) << text;
  EXPECT_NE(text.find("[dims-inconsistent]"), std::string::npos);
}

TEST(Check, TraceListsEveryFiring) {
  Program p = parse_program(read_fixture("triangle.phg"));
  CheckReport r = check_program(p);
  const std::string trace = trace_text(p.phg, r.saturation);
  EXPECT_NE(trace.find("fire span"), std::string::npos);
  EXPECT_NE(trace.find("fire measure"), std::string::npos);
  EXPECT_NE(trace.find("rounds 2"), std::string::npos);
  EXPECT_EQ(trace, trace_text(p.phg, check_program(p).saturation));
}
