use artin_bench::{group, table};

#[test]
fn benchmark_inputs_are_the_expected_groups() {
    for (name, order, classes) in [("S4", 24, 5), ("D12", 24, 9), ("C24", 24, 24), ("A5", 60, 5), ("Q8", 8, 5), ("D5", 10, 4)] {
        assert_eq!(group(name).order(), order, "{name}");
        assert_eq!(table(name).len(), classes, "{name}");
    }
}
