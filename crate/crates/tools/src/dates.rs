//! Proleptic Gregorian date arithmetic.

use chrono::{Datelike, Duration, NaiveDate, Weekday};

use crate::error::ToolError;

const FORMATS: &[&str] = &["%Y-%m-%d", "%B %d, %Y", "%b %d, %Y", "%d %B %Y", "%Y/%m/%d"];

pub fn parse_date(s: &str, name: &str) -> Result<NaiveDate, ToolError> {
    let t = s.trim();
    FORMATS
        .iter()
        .find_map(|f| NaiveDate::parse_from_str(t, f).ok())
        .ok_or_else(|| ToolError::invalid(name, format!("'{t}' is not a valid YYYY-MM-DD date")))
}

pub fn format_date(d: NaiveDate) -> String {
    d.format("%Y-%m-%d").to_string()
}

pub fn add(date: NaiveDate, days: i64) -> Result<NaiveDate, ToolError> {
    Duration::try_days(days)
        .and_then(|dur| date.checked_add_signed(dur))
        .ok_or_else(|| ToolError::invalid("days", "result is out of the supported date range"))
}

/// Signed day count `d2 - d1`.
pub fn diff(d1: NaiveDate, d2: NaiveDate) -> i64 {
    (d2 - d1).num_days()
}

pub fn weekday_name(w: Weekday) -> &'static str {
    match w {
        Weekday::Mon => "Monday",
        Weekday::Tue => "Tuesday",
        Weekday::Wed => "Wednesday",
        Weekday::Thu => "Thursday",
        Weekday::Fri => "Friday",
        Weekday::Sat => "Saturday",
        Weekday::Sun => "Sunday",
    }
}

pub fn day_of_week(d: NaiveDate) -> &'static str {
    weekday_name(d.weekday())
}

pub const MONTHS: [&str; 12] = [
    "January",
    "February",
    "March",
    "April",
    "May",
    "June",
    "July",
    "August",
    "September",
    "October",
    "November",
    "December",
];

/// "August 15, 2027".
pub fn verbalize(d: NaiveDate) -> String {
    format!("{} {}, {}", MONTHS[d.month0() as usize], d.day(), d.year())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn d(s: &str) -> NaiveDate {
        parse_date(s, "date").unwrap()
    }

    #[test]
    fn reference_values() {
        assert_eq!(diff(d("2024-02-25"), d("2024-03-10")), 14);
        assert_eq!(diff(d("2023-02-25"), d("2023-03-10")), 13);
        assert_eq!(day_of_week(d("2027-08-15")), "Sunday");
        assert_eq!(diff(d("2024-01-03"), d("2024-01-18")), 15);
        assert_eq!(diff(d("2024-01-18"), d("2024-01-03")), -15);
        assert_eq!(format_date(add(d("2024-12-30"), 3).unwrap()), "2025-01-02");
        assert_eq!(add(d("2024-05-05"), 0).unwrap(), d("2024-05-05"));
    }

    #[test]
    fn accepts_verbalized_and_rejects_malformed() {
        assert_eq!(d("August 15, 2027"), d("2027-08-15"));
        assert_eq!(verbalize(d("2027-08-15")), "August 15, 2027");
        assert!(parse_date("2024-02-30", "date").is_err());
        assert!(parse_date("tomorrow", "date").is_err());
    }

    /// Zeller's congruence as an independent weekday oracle.
    fn zeller(y: i32, m: u32, day: u32) -> &'static str {
        let (y, m) = if m < 3 { (y - 1, m + 12) } else { (y, m) };
        let k = y.rem_euclid(100);
        let j = y.div_euclid(100);
        let h = (day as i32 + (13 * (m as i32 + 1)) / 5 + k + k / 4 + j / 4 + 5 * j).rem_euclid(7);
        [
            "Saturday",
            "Sunday",
            "Monday",
            "Tuesday",
            "Wednesday",
            "Thursday",
            "Friday",
        ][h as usize]
    }

    proptest! {
        #[test]
        fn add_then_diff_roundtrips(days in -100_000i64..100_000, y in 1600i32..2400, ord in 1u32..365) {
            let start = NaiveDate::from_yo_opt(y, ord).unwrap();
            let end = add(start, days).unwrap();
            prop_assert_eq!(diff(start, end), days);
        }

        #[test]
        fn weekday_matches_zeller(y in 1600i32..2400, ord in 1u32..365) {
            let date = NaiveDate::from_yo_opt(y, ord).unwrap();
            prop_assert_eq!(day_of_week(date), zeller(date.year(), date.month(), date.day()));
        }
    }
}
