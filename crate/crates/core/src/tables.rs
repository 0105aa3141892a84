//! Printed reference tables the catalog numbering is reconciled against.
//!
//! `RAY_TABLE` is the coordinate listing as printed,
//! including entries whose signs were lost (rays 6/11, 7/8/9 and 23/26 render
//! identically). `BASIS_TABLE` is the 5×5 grid of 24-cells, three bases each:
//! fifteen text lines, five tab-separated quadruples per line, grid rows
//! `A'..E'` top to bottom and columns `A..E` left to right.

pub const RAY_TABLE: &str = "\
1 = 2 0 0 0
2 = 0 2 0 0
3 = 0 0 2 0
4 = 0 0 0 2
5 = 1 1 1 1
6 = 1 1 -1 -1
7 = 1 -1 -1 -1
8 = 1 -1 -1 -1
9 = 1 -1 -1 -1
10 = 1 -1 1 1
11 = 1 1 -1 -1
12 = 1 1 1 -1
13 = κ 0 -τ -1
14 = 0 κ 1 -τ
15 = τ -1 κ 0
16 = 1 τ 0 κ
17 = τ κ 0 -1
18 = 1 0 κ τ
19 = κ -τ -1 0
20 = 0 1 -τ κ
21 = 1 κ τ 0
22 = τ 0 -1 κ
23 = 0 τ -κ -1
24 = κ -1 0 -τ
25 = τ 0 1 κ
26 = 0 τ -κ -1
27 = 1 -κ -τ 0
28 = κ 1 0 -τ
29 = 0 κ 1 τ
30 = τ 1 -κ 0
31 = κ 0 τ -1
32 = 1 -τ 0 κ
33 = τ -κ 0 -1
34 = 0 1 -τ -κ
35 = 1 0 -κ τ
36 = κ τ 1 0
37 = τ 0 -1 -κ
38 = 0 τ κ -1
39 = 1 -κ τ 0
40 = κ 1 0 τ
41 = τ 1 κ 0
42 = 0 κ -1 -τ
43 = 1 -τ 0 -κ
44 = κ 0 -τ 1
45 = 0 1 τ κ
46 = τ -κ 0 1
47 = κ τ -1 0
48 = 1 0 κ -τ
49 = κ 0 τ 1
50 = 0 κ -1 τ
51 = τ -1 -κ 0
52 = 1 τ 0 -κ
53 = 1 0 -κ -τ
54 = τ κ 0 1
55 = 0 1 τ -κ
56 = κ -τ 1 0
57 = τ 0 1 -κ
58 = 1 κ -τ 0
59 = κ -1 0 τ
60 = 0 τ κ 1
";

pub const BASIS_TABLE: &str = "\
1 2 3 4\t31 42 51 16\t22 60 39 28\t57 23 27 40\t44 29 15 52
5 6 7 8\t38 24 58 25\t18 47 33 55\t36 53 20 46\t59 26 37 21
9 10 11 12\t56 45 17 35\t13 32 50 41\t43 49 30 14\t34 19 48 54
13 14 15 16\t43 54 3 28\t34 12 51 40\t9 35 39 52\t56 41 27 4
17 18 19 20\t50 36 10 37\t30 59 45 7\t48 5 32 58\t11 38 49 33
21 22 23 24\t8 57 29 47\t25 44 2 53\t55 1 42 26\t46 31 60 6
25 26 27 28\t55 6 15 40\t46 24 3 52\t21 47 51 4\t8 53 39 16
29 30 31 32\t2 48 22 49\t42 11 57 19\t60 17 44 10\t23 50 1 45
33 34 35 36\t20 9 41 59\t37 56 14 5\t7 13 54 38\t58 43 12 18
37 38 39 40\t7 18 27 52\t58 36 15 4\t33 59 3 16\t20 5 51 28
41 42 43 44\t14 60 34 1\t54 23 9 31\t12 29 56 22\t35 2 13 57
45 46 47 48\t32 21 53 11\t49 8 26 17\t19 25 6 50\t10 55 24 30
49 50 51 52\t19 30 39 4\t10 48 27 16\t45 11 15 28\t32 17 3 40
53 54 55 56\t26 12 46 13\t6 35 21 43\t24 41 8 34\t47 14 25 9
57 58 59 60\t44 33 5 23\t1 20 38 29\t31 37 18 2\t22 7 36 42
";

/// Dual-pair grid of lines: a header line then one line per primed row pair;
/// each box interleaves the left and right line.
pub const LINE_TABLE: &str = "		A B	A C	A D	A E	B C	B D	B E	C D	C E	D E
A'	B'	3 16 8 17 10 24	2 13 7 18 12 22	1 14 5 20 9 23	4 15 6 19 11 21	25 28 45 47 51 50	35 36 42 43 58 57	31 29 38 37 56 54	32 30 39 40 55 53	33 34 41 44 60 59	27 26 46 48 49 52
A'	C'	2 25 6 31 9 35	3 28 5 32 11 33	4 27 7 30 10 36	1 26 8 29 12 34	24 22 42 41 56 55	17 20 38 40 51 49	16 15 45 48 58 59	13 14 47 46 60 57	18 19 39 37 50 52	23 21 43 44 53 54
A'	D'	1 38 7 42 11 45	4 39 8 41 9 47	3 40 6 43 12 46	2 37 5 44 10 48	17 18 31 32 58 60	16 14 25 27 56 53	24 21 35 34 51 52	22 23 33 36 50 49	13 15 28 26 55 54	20 19 30 29 57 59
A'	E'	4 51 5 56 12 58	1 50 6 55 10 60	2 49 8 53 11 57	3 52 7 54 9 59	16 13 35 33 38 39	24 23 31 30 45 46	17 19 25 26 42 44	18 20 28 27 41 43	22 21 32 29 47 48	14 15 36 34 40 37
B'	C'	15 28 20 29 22 36	14 25 19 30 24 34	13 26 17 32 21 35	16 27 18 31 23 33	3 2 37 40 57 59	10 9 47 48 54 55	8 6 43 41 50 49	7 5 44 42 51 52	12 11 45 46 53 56	1 4 39 38 58 60
B'	D'	14 37 18 43 21 47	15 40 17 44 23 45	16 39 19 42 22 48	13 38 20 41 24 46	8 7 36 34 54 53	3 1 29 32 50 52	10 11 28 27 57 60	12 9 25 26 59 58	2 4 30 31 51 49	5 6 35 33 55 56
B'	E'	13 50 19 54 23 57	16 51 20 53 21 59	15 52 18 55 24 58	14 49 17 56 22 60	10 12 29 30 43 44	8 5 28 26 37 39	3 4 36 33 47 46	2 1 34 35 45 48	7 6 25 27 40 38	9 11 32 31 42 41
C'	D'	27 40 32 41 34 48	26 37 31 42 36 46	25 38 29 44 33 47	28 39 30 43 35 45	9 11 15 14 49 52	6 7 22 21 59 60	2 1 20 18 55 53	3 4 19 17 56 54	5 8 24 23 57 58	10 12 13 16 51 50
C'	E'	26 49 30 55 33 59	27 52 29 56 35 57	28 51 31 54 34 60	25 50 32 53 36 58	6 5 20 19 48 46	2 4 15 13 41 44	9 12 22 23 40 39	11 10 24 21 37 38	3 1 14 16 42 43	7 8 17 18 47 45
D'	E'	39 52 44 53 46 60	38 49 43 54 48 58	37 50 41 56 45 59	40 51 42 55 47 57	1 4 21 23 27 26	11 12 18 19 34 33	7 5 14 13 32 30	8 6 15 16 31 29	9 10 17 20 36 35	3 2 22 24 25 28
";

/// Grid of 24-cells with each cell's twelve rays on one line (three bases in
/// sequence), unmarked.
pub const CELL_TABLE: &str = "	A	B	C	D	E
A'	1 2 3 4 5 6 7 8 9 10 11 12	31 42 51 16 38 24 58 25 56 45 17 35	22 60 39 28 18 47 33 55 13 32 50 41	57 23 27 40 36 53 20 46 43 49 30 14	44 29 15 52 59 26 37 21 34 19 48 54
B'	13 14 15 16 17 18 19 20 21 22 23 24	43 54 3 28 50 36 10 37 8 57 29 47	34 12 51 40 30 59 45 7 25 44 2 53	9 35 39 52 48 5 32 58 55 1 42 26	56 41 27 4 11 38 49 33 46 31 60 6
C'	25 26 27 28 29 30 31 32 33 34 35 36	55 6 15 40 2 48 22 49 20 9 41 59	46 24 3 52 42 11 57 19 37 56 14 5	21 47 51 4 60 17 44 10 7 13 54 38	8 53 39 16 23 50 1 45 58 43 12 18
D'	37 38 39 40 41 42 43 44 45 46 47 48	7 18 27 52 14 60 34 1 32 21 53 11	58 36 15 4 54 23 9 31 49 8 26 17	33 59 3 16 12 29 56 22 19 25 6 50	20 5 51 28 35 2 13 57 10 55 24 30
E'	49 50 51 52 53 54 55 56 57 58 59 60	19 30 39 4 26 12 46 13 44 33 5 23	10 48 27 16 6 35 21 43 1 20 38 29	45 11 15 28 24 41 8 34 31 37 18 2	32 17 3 40 47 14 25 9 22 7 36 42
";

/// 5-cycle chain patterns, complementary chains side by side.
pub const CYCLE_CHAIN_TABLE: &str = "\
AB-BC-CD-DE-EA	AC-CE-EB-BD-DA
AB-BD-DC-CE-EA	AC-CB-BE-ED-DA
AB-BC-CE-ED-DA	AC-CD-DB-BE-EA
AB-BE-EC-CD-DA	AC-CB-BD-DE-EA
AB-BD-DE-EC-CA	AD-DC-CB-BE-EA
AB-BE-ED-DC-CA	AD-DB-BC-CE-EA
";

/// 2|3 bipartite chain patterns.
pub const BIPARTITE_CHAIN_TABLE: &str = "\
AC-AD-AE-BC-BD-BE
AB-AD-AE-CB-CD-CE
AB-AC-AE-DB-DC-DE
AB-AC-AD-EB-EC-ED
BA-BD-BE-CA-CD-CE
BA-BC-BE-DA-DC-DE
BA-BC-BD-EA-EC-ED
CA-CB-CE-DA-DB-DE
CA-CB-CD-EA-EB-ED
DA-DB-DC-EA-EB-EC
";

/// `BASIS_TABLE` parsed as `[grid_row][grid_col][basis_row] -> ids in printed order`.
pub fn basis_grid() -> [[[[u8; 4]; 3]; 5]; 5] {
    let mut grid = [[[[0u8; 4]; 3]; 5]; 5];
    for (line_no, line) in BASIS_TABLE.lines().enumerate() {
        let (row, k) = (line_no / 3, line_no % 3);
        for (col, quad) in line.split('\t').enumerate() {
            let ids: Vec<u8> = quad.split_whitespace().map(|t| t.parse().expect("numeric basis table")).collect();
            grid[row][col][k] = ids.try_into().expect("four ids per basis");
        }
    }
    grid
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basis_table_shape() {
        let grid = basis_grid();
        let mut count = [0usize; 61];
        for row in grid {
            for cell in row {
                for basis in cell {
                    for id in basis {
                        count[id as usize] += 1;
                    }
                }
            }
        }
        // 75 × 4 = 60 × 5
        assert!(count[1..].iter().all(|&c| c == 5));
        assert_eq!(RAY_TABLE.lines().count(), 60);
    }
}
