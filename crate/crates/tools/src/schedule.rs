//! Meeting-interval queries on half-open minute ranges `[start, end)`.

use crate::error::ToolError;

pub const DAY_MINUTES: u32 = 24 * 60;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Interval {
    pub start: u32,
    pub end: u32,
}

impl Interval {
    pub fn new(start: u32, end: u32) -> Result<Self, ToolError> {
        if start >= end || end > DAY_MINUTES {
            return Err(ToolError::invalid(
                "meetings",
                format!("malformed interval {}-{}", fmt_time(start), fmt_time(end)),
            ));
        }
        Ok(Interval { start, end })
    }

    pub fn len(&self) -> u32 {
        self.end - self.start
    }

    pub fn is_empty(&self) -> bool {
        self.start == self.end
    }

    pub fn render(&self) -> String {
        format!("{}-{}", fmt_time(self.start), fmt_time(self.end))
    }
}

pub fn fmt_time(m: u32) -> String {
    format!("{:02}:{:02}", m / 60, m % 60)
}

pub fn parse_time(s: &str) -> Result<u32, ToolError> {
    let t = s.trim();
    let (h, m) = t
        .split_once(':')
        .ok_or_else(|| ToolError::invalid("time", format!("'{t}' is not HH:MM")))?;
    let h: u32 = h
        .trim()
        .parse()
        .map_err(|_| ToolError::invalid("time", format!("bad hour in '{t}'")))?;
    let m: u32 = m
        .trim()
        .parse()
        .map_err(|_| ToolError::invalid("time", format!("bad minute in '{t}'")))?;
    if m >= 60 || h * 60 + m > DAY_MINUTES {
        return Err(ToolError::invalid("time", format!("'{t}' is out of range")));
    }
    Ok(h * 60 + m)
}

/// Parses "09:00-10:30" (hyphen, en dash or "to").
pub fn parse_interval(s: &str) -> Result<Interval, ToolError> {
    let t = s.trim().replace(['–', '—'], "-").replace(" to ", "-");
    let (a, b) = t
        .split_once('-')
        .ok_or_else(|| ToolError::invalid("meetings", format!("'{t}' is not HH:MM-HH:MM")))?;
    Interval::new(parse_time(a)?, parse_time(b)?)
}

/// Sorted, non-overlapping union. Touching intervals merge.
pub fn merge(meetings: &[Interval]) -> Vec<Interval> {
    let mut v = meetings.to_vec();
    v.sort();
    let mut out: Vec<Interval> = Vec::with_capacity(v.len());
    for m in v {
        match out.last_mut() {
            Some(last) if m.start <= last.end => last.end = last.end.max(m.end),
            _ => out.push(m),
        }
    }
    out
}

/// Maximal free gaps inside `[start, end)` of at least `duration` minutes,
/// earliest first.
pub fn free_slots(
    meetings: &[Interval],
    duration: u32,
    start: u32,
    end: u32,
) -> Result<Vec<Interval>, ToolError> {
    if duration == 0 {
        return Err(ToolError::invalid("duration", "must be positive"));
    }
    if start >= end || end > DAY_MINUTES {
        return Err(ToolError::invalid(
            "end",
            "search window must satisfy start < end",
        ));
    }
    let mut out = Vec::new();
    let mut cursor = start;
    for m in merge(meetings) {
        if m.end <= cursor {
            continue;
        }
        if m.start >= end {
            break;
        }
        if m.start > cursor && m.start - cursor >= duration {
            out.push(Interval {
                start: cursor,
                end: m.start,
            });
        }
        cursor = cursor.max(m.end);
    }
    if cursor < end && end - cursor >= duration {
        out.push(Interval { start: cursor, end });
    }
    Ok(out)
}

/// The earliest `duration`-minute slot, if any.
pub fn first_slot(
    meetings: &[Interval],
    duration: u32,
    start: u32,
    end: u32,
) -> Result<Option<Interval>, ToolError> {
    Ok(free_slots(meetings, duration, start, end)?
        .first()
        .map(|g| Interval {
            start: g.start,
            end: g.start + duration,
        }))
}

/// True iff the proposal overlaps some meeting by a positive length.
pub fn conflicts(meetings: &[Interval], proposal: Interval) -> bool {
    meetings
        .iter()
        .any(|m| m.start < proposal.end && proposal.start < m.end)
}

pub fn render_slots(slots: &[Interval]) -> String {
    slots
        .iter()
        .map(Interval::render)
        .collect::<Vec<_>>()
        .join(", ")
}

pub fn list_meetings(meetings: &[Interval]) -> String {
    let mut v = meetings.to_vec();
    v.sort();
    v.iter()
        .enumerate()
        .map(|(i, m)| format!("{}. {} ({} min)", i + 1, m.render(), m.len()))
        .collect::<Vec<_>>()
        .join("; ")
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn iv(s: &str) -> Interval {
        parse_interval(s).unwrap()
    }

    #[test]
    fn reference_example() {
        let m = vec![iv("9:00-10:00"), iv("14:00-15:00")];
        let slots = free_slots(
            &m,
            60,
            parse_time("10:00").unwrap(),
            parse_time("14:00").unwrap(),
        )
        .unwrap();
        assert_eq!(render_slots(&slots), "10:00-14:00");
        assert!(!conflicts(&m, iv("10:00-11:00")));
        assert!(conflicts(&m, iv("09:30-10:30")));
        assert!(!conflicts(&m, iv("15:00-16:00")));
    }

    #[test]
    fn empty_day_starts_at_range_start() {
        let s = first_slot(&[], 45, 540, 1020).unwrap().unwrap();
        assert_eq!(s.render(), "09:00-09:45");
    }

    #[test]
    fn merges_overlaps_and_touching() {
        let m = vec![
            iv("09:00-10:00"),
            iv("09:30-11:00"),
            iv("11:00-11:30"),
            iv("13:00-14:00"),
        ];
        assert_eq!(render_slots(&merge(&m)), "09:00-11:30, 13:00-14:00");
        let slots = free_slots(&m, 30, 540, 1020).unwrap();
        assert_eq!(render_slots(&slots), "11:30-13:00, 14:00-17:00");
    }

    #[test]
    fn malformed_input() {
        assert!(parse_interval("10:00-09:00").is_err());
        assert!(parse_interval("25:00-26:00").is_err());
        assert!(free_slots(&[], 0, 0, 60).is_err());
    }

    /// Minute-by-minute scan: the oracle for the sweep.
    fn brute_first(meetings: &[Interval], duration: u32, start: u32, end: u32) -> Option<u32> {
        let busy = |t: u32| meetings.iter().any(|m| m.start <= t && t < m.end);
        (start..end).find(|&s| s + duration <= end && (s..s + duration).all(|t| !busy(t)))
    }

    fn brute_gaps(meetings: &[Interval], duration: u32, start: u32, end: u32) -> Vec<Interval> {
        let busy = |t: u32| meetings.iter().any(|m| m.start <= t && t < m.end);
        let mut out = Vec::new();
        let mut t = start;
        while t < end {
            if busy(t) {
                t += 1;
                continue;
            }
            let s = t;
            while t < end && !busy(t) {
                t += 1;
            }
            if t - s >= duration {
                out.push(Interval { start: s, end: t });
            }
        }
        out
    }

    fn meetings() -> impl Strategy<Value = Vec<Interval>> {
        prop::collection::vec((480u32..1080, 1u32..16), 0..18).prop_map(|v| {
            v.into_iter()
                .map(|(s, l)| Interval {
                    start: s / 15 * 15,
                    end: s / 15 * 15 + l * 15,
                })
                .collect()
        })
    }

    proptest! {
        #[test]
        fn sweep_matches_minute_scan(m in meetings(), dur in prop::sample::select(vec![15u32, 30, 45, 60, 90])) {
            let (start, end) = (540, 1020);
            let got = first_slot(&m, dur, start, end).unwrap().map(|s| s.start);
            prop_assert_eq!(got, brute_first(&m, dur, start, end));
            prop_assert_eq!(free_slots(&m, dur, start, end).unwrap(), brute_gaps(&m, dur, start, end));
        }
    }
}
