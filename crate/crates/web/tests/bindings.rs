use cycdet_web::{eei_grid_json, spectrum_json, verify_json};
use serde_json::Value;

fn parse(s: String) -> Value {
    serde_json::from_str(&s).unwrap()
}

#[test]
fn spectrum_of_sun1() {
    let v = parse(spectrum_json("sun1", 5).unwrap());
    assert_eq!(v["cyclotomic_polynomial"], "x^4 + x^3 + x^2 + x + 1");
    let exact: Vec<&str> = v["eigenvalues"].as_array().unwrap().iter().map(|e| e["exact"].as_str().unwrap()).collect();
    assert_eq!(exact, ["2", "1", "0", "-1", "-2"]);
    assert_eq!(v["eigenvalues"][0]["re"].as_f64().unwrap(), 2.0);
    assert_eq!(v["zero_indices"], serde_json::json!([2]));
    assert_eq!(v["normal"], true);
}

#[test]
fn spectrum_rejects_bad_input() {
    assert!(spectrum_json("sun1", 4).unwrap_err().contains("odd"));
    assert!(spectrum_json("nope", 5).is_err());
    assert!(spectrum_json("abc:1,1,2", 1000).unwrap_err().contains("between 2 and"));
}

#[test]
fn verify_all_routes() {
    let v = parse(verify_json("sun2", 7, "all").unwrap());
    let reports = v.as_array().unwrap();
    assert_eq!(reports.len(), 4);
    assert!(reports.iter().all(|r| r["verified"] == true && r["lhs"] == "-225/7"));

    // brute force is dropped above the browser limit
    let v = parse(verify_json("sun1", 11, "all").unwrap());
    assert_eq!(v.as_array().unwrap().len(), 3);
    assert!(verify_json("sun1", 11, "brute").is_err());
    assert!(verify_json("sun3", 5, "det").is_err());
}

#[test]
fn eei_grid() {
    let v = parse(eei_grid_json("abc:1,2,3", 5).unwrap());
    assert_eq!(v["all_verified"], true);
    let cells = v["cells"].as_array().unwrap();
    assert_eq!(cells.len(), 5);
    assert!(cells.iter().all(|row| row.as_array().unwrap().len() == 5));
}
