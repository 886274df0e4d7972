//! Every example runs to completion.

macro_rules! example {
    ($name:ident) => {
        mod $name {
            include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/", stringify!($name), ".rs"));

            #[test]
            fn runs() {
                run_example().unwrap();
            }
        }
    };
}

example!(periodic_points);
example!(zeta_perron);
example!(certify_prime);
example!(chessboard_heights);
example!(dyck_counts);
example!(rotation_census);
example!(cli_report);
