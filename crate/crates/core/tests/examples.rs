macro_rules! example {
    ($module:ident, $file:literal, $test:ident) => {
        mod $module {
            include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/", $file));
        }

        #[test]
        fn $test() {
            $module::run_example().expect(concat!($file, " should run"));
        }
    };
}

example!(finite_fields, "finite_fields.rs", finite_fields_example_runs);
example!(rational_functions, "rational_functions.rs", rational_functions_example_runs);
example!(octonion_identities, "octonion_identities.rs", octonion_identities_example_runs);
example!(multiplication_table, "multiplication_table.rs", multiplication_table_example_runs);
example!(pathological_map, "pathological_map.rs", pathological_map_example_runs);
example!(solve_identity, "solve_identity.rs", solve_identity_example_runs);
example!(json_reports, "json_reports.rs", json_reports_example_runs);
