//! Rate-adaptive syndrome coding with a feedback channel.
//!
//! The encoder walks down a ladder of nested RS codes. Each round it sends
//! only the parity-check rows the next code adds; the decoder retries from
//! scratch on the longer syndrome and reports success or failure back.

use std::io;

use super::{decode_checked, Code, CodecError, DecodeOutcome, DecodeStatus, SyndromePacket};
use crate::crc::{crc_compute, CrcSpec};
use crate::gf::{Field, Symbol};
use crate::listdecode::GsConfig;
use crate::planner::{Family, FeedbackSchedule};
use crate::rscode::{check_len, check_symbols, RsCode};

pub const TRANSCRIPT_HEADER: [&str; 4] = ["round", "rung_k", "symbols_sent_cum", "status"];

/// Symbols released by one encoder round.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Increment {
    pub round: usize,
    pub k: usize,
    /// Parity-check rows `rows.0..rows.1` of the rung's code.
    pub rows: (usize, usize),
    pub syndrome: Vec<Symbol>,
    /// The checksum, carried by the first round only.
    pub crc: Option<Vec<Symbol>>,
}

impl Increment {
    pub fn len(&self) -> usize {
        self.syndrome.len() + self.crc.as_ref().map_or(0, Vec::len)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RoundRecord {
    pub round: usize,
    pub rung_k: usize,
    pub symbols_sent_cum: usize,
    pub status: DecodeStatus,
}

/// Encoder state for one source block.
#[derive(Debug, Clone)]
pub struct FeedbackSession {
    schedule: FeedbackSchedule,
    code: RsCode,
    crc: CrcSpec,
    rung: usize,
    symbols_sent: usize,
    transcript: Vec<RoundRecord>,
}

impl FeedbackSession {
    pub fn new(schedule: FeedbackSchedule, field: Field, crc: CrcSpec) -> Result<Self, CodecError> {
        if field.order() != schedule.n {
            return Err(CodecError::Malformed(format!(
                "schedule length {} does not match GF({})",
                schedule.n,
                field.size()
            )));
        }
        if crc.field() != &field {
            return Err(CodecError::Malformed("CRC field differs from code field".into()));
        }
        if crc.rho() != schedule.rho {
            return Err(CodecError::Malformed(format!(
                "schedule plans for {} CRC symbols, CRC has {}",
                schedule.rho,
                crc.rho()
            )));
        }
        let last = schedule.rungs.last().ok_or(CodecError::LadderExhausted)?;
        let code = RsCode::new(field, last.k)?;
        Ok(FeedbackSession {
            schedule,
            code,
            crc,
            rung: 0,
            symbols_sent: 0,
            transcript: Vec::new(),
        })
    }

    pub fn schedule(&self) -> &FeedbackSchedule {
        &self.schedule
    }

    /// Index of the next rung to send.
    pub fn rung(&self) -> usize {
        self.rung
    }

    pub fn symbols_sent(&self) -> usize {
        self.symbols_sent
    }

    pub fn transcript(&self) -> &[RoundRecord] {
        &self.transcript
    }

    pub fn is_exhausted(&self) -> bool {
        self.rung >= self.schedule.rungs.len()
    }

    fn redundancy_at(&self, rung: usize) -> usize {
        self.schedule.n - self.schedule.rungs[rung].k
    }

    /// Release the rows the next rung adds to the parity-check matrix.
    pub fn encode_step(&mut self, x: &[Symbol]) -> Result<Increment, CodecError> {
        check_len(self.schedule.n, x.len())?;
        check_symbols(x, self.code.field().size())?;
        if self.is_exhausted() {
            return Err(CodecError::LadderExhausted);
        }
        let start = if self.rung == 0 { 0 } else { self.redundancy_at(self.rung - 1) };
        let end = self.redundancy_at(self.rung);
        let inc = Increment {
            round: self.rung,
            k: self.schedule.rungs[self.rung].k,
            rows: (start, end),
            syndrome: self.code.syndrome_rows(x, start, end)?,
            crc: (self.rung == 0).then(|| crc_compute(x, &self.crc)),
        };
        self.symbols_sent += inc.len();
        self.rung += 1;
        Ok(inc)
    }

    /// Log the decoder's verdict on the round just sent.
    pub fn record(&mut self, status: DecodeStatus) {
        let round = self.rung.saturating_sub(1);
        self.transcript.push(RoundRecord {
            round,
            rung_k: self.schedule.rungs[round].k,
            symbols_sent_cum: self.symbols_sent,
            status,
        });
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FeedbackRun {
    pub transcript: Vec<RoundRecord>,
    /// Outcome of the last round.
    pub outcome: DecodeOutcome,
    pub symbols_sent: usize,
    pub n: usize,
}

impl FeedbackRun {
    pub fn succeeded(&self) -> bool {
        self.outcome.is_success()
    }

    pub fn realized_rate(&self) -> f64 {
        self.symbols_sent as f64 / self.n as f64
    }
}

/// The decoding end of the protocol, with one code built per rung so it
/// can be reused across blocks.
#[derive(Debug, Clone)]
pub struct FeedbackDecoder {
    template: FeedbackSession,
    codes: Vec<Code>,
}

impl FeedbackDecoder {
    pub fn new(schedule: FeedbackSchedule, crc: CrcSpec) -> Result<Self, CodecError> {
        let field = crc.field().clone();
        let m = field.degree();
        let codes = schedule
            .rungs
            .iter()
            .map(|r| Code::rs(m, r.k))
            .collect::<Result<_, _>>()?;
        Ok(FeedbackDecoder {
            template: FeedbackSession::new(schedule, field, crc)?,
            codes,
        })
    }

    pub fn schedule(&self) -> &FeedbackSchedule {
        &self.template.schedule
    }

    /// Run both ends until the decoder succeeds or the ladder runs out.
    pub fn run(&self, x: &[Symbol], y: &[Symbol], cfg: &GsConfig) -> Result<FeedbackRun, CodecError> {
        let mut session = self.template.clone();
        let crc = &session.crc.clone();
        let n = session.schedule.n;
        check_len(n, y.len())?;
        check_symbols(y, crc.field().size())?;
        let mut syndrome = Vec::new();
        let mut crc_symbols = Vec::new();
        loop {
            let code = &self.codes[session.rung];
            let inc = session.encode_step(x)?;
            syndrome.extend_from_slice(&inc.syndrome);
            if let Some(h) = inc.crc {
                crc_symbols = h;
            }
            let pkt = SyndromePacket {
                family: Family::Rs,
                m: crc.field().degree() as u8,
                n,
                k: inc.k,
                crc_id: crc.id(),
                syndrome: syndrome.clone(),
                crc: crc_symbols.clone(),
            };
            let outcome = decode_checked(code, crc, &pkt, y, cfg)?;
            session.record(outcome.status);
            if outcome.is_success() || session.is_exhausted() {
                return Ok(FeedbackRun {
                    transcript: session.transcript,
                    outcome,
                    symbols_sent: session.symbols_sent,
                    n,
                });
            }
        }
    }
}

/// Run both ends of the protocol for one block.
pub fn feedback_run(
    x: &[Symbol],
    y: &[Symbol],
    schedule: &FeedbackSchedule,
    cfg: &GsConfig,
    crc: &CrcSpec,
) -> Result<FeedbackRun, CodecError> {
    FeedbackDecoder::new(schedule.clone(), crc.clone())?.run(x, y, cfg)
}

pub fn write_transcript_csv<W: io::Write>(records: &[RoundRecord], out: W) -> Result<(), csv::Error> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(TRANSCRIPT_HEADER)?;
    for r in records {
        w.write_record([
            r.round.to_string(),
            r.rung_k.to_string(),
            r.symbols_sent_cum.to_string(),
            r.status.to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::correlation::{add_exact_errors, WindowPolicy};
    use crate::planner::plan_feedback;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn wide_window_schedule() -> FeedbackSchedule {
        plan_feedback(256, 255, 0.34, 1e-3, Family::Rs, WindowPolicy::Fixed { l: 3, h: 171 }).unwrap()
    }

    fn gf256() -> Field {
        Field::new(8).unwrap()
    }

    #[test]
    fn first_steps_of_the_ladder() {
        let field = gf256();
        let crc = CrcSpec::default_for(&field);
        let mut s = FeedbackSession::new(wide_window_schedule(), field, crc).unwrap();
        let x = vec![5; 255];
        let a = s.encode_step(&x).unwrap();
        assert_eq!((a.k, a.syndrome.len(), a.crc.as_ref().map(Vec::len)), (249, 6, Some(2)));
        let b = s.encode_step(&x).unwrap();
        assert_eq!((b.k, b.syndrome.len(), b.crc), (247, 2, None));
        assert_eq!(s.symbols_sent(), 10);
    }

    #[test]
    fn increments_concatenate_to_one_shot_syndrome() {
        let field = gf256();
        let crc = CrcSpec::default_for(&field);
        let mut rng = ChaCha8Rng::seed_from_u64(40);
        let x: Vec<Symbol> = (0..255).map(|_| rng.gen_range(0..256)).collect();
        let mut s = FeedbackSession::new(wide_window_schedule(), field.clone(), crc).unwrap();
        let mut acc = Vec::new();
        while !s.is_exhausted() {
            let inc = s.encode_step(&x).unwrap();
            acc.extend(inc.syndrome);
            let full = RsCode::new(field.clone(), inc.k).unwrap().syndrome(&x).unwrap();
            assert_eq!(acc, full);
        }
        assert!(matches!(s.encode_step(&x), Err(CodecError::LadderExhausted)));
    }

    #[test]
    fn noiseless_run_stops_at_first_rung() {
        let field = gf256();
        let crc = CrcSpec::default_for(&field);
        let x = vec![9; 255];
        let run = feedback_run(&x, &x, &wide_window_schedule(), &GsConfig::default(), &crc).unwrap();
        assert_eq!(run.transcript.len(), 1);
        assert!(run.succeeded());
        assert_eq!(run.symbols_sent, 255 - 249 + 2);
    }

    #[test]
    fn stops_at_first_rung_that_reaches_the_error_count() {
        let field = gf256();
        let crc = CrcSpec::default_for(&field);
        let sched = wide_window_schedule();
        let mut rng = ChaCha8Rng::seed_from_u64(41);
        let x: Vec<Symbol> = (0..255).map(|_| rng.gen_range(0..256)).collect();
        let y = add_exact_errors(&x, 10, 256, &mut rng);
        let run = feedback_run(&x, &y, &sched, &GsConfig::default(), &crc).unwrap();
        assert!(run.succeeded());
        assert_eq!(run.outcome.recovered.as_deref(), Some(&x[..]));
        let last = run.transcript.last().unwrap();
        // Unique decoding of the final rung covers 10 errors, the one before does not.
        assert!((255 - last.rung_k) / 2 >= 10);
        let prev = &run.transcript[run.transcript.len() - 2];
        assert!((255 - prev.rung_k) / 2 < 10);
        assert!(run.transcript.windows(2).all(|w| w[0].symbols_sent_cum < w[1].symbols_sent_cum));
    }

    #[test]
    fn transcript_csv() {
        let records = vec![RoundRecord {
            round: 0,
            rung_k: 249,
            symbols_sent_cum: 8,
            status: DecodeStatus::Success,
        }];
        let mut buf = Vec::new();
        write_transcript_csv(&records, &mut buf).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), "round,rung_k,symbols_sent_cum,status\n0,249,8,SUCCESS\n");
    }
}
