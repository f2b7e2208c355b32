//! Snowball French stemmer.
//!
//! A direct port of the Snowball `french.sbl` program (Snowball 3.x), run over
//! a buffer of Unicode scalar values. The routine structure mirrors the
//! Snowball source so the two can be compared rule by rule.

use alloc::string::String;
use alloc::vec::Vec;

/// Stems one lowercase French word.
pub fn stem(word: &str) -> String {
    let mut env = Env::new(word);
    env.stem();
    env.buf.iter().collect()
}

const VOWELS: &[char] = &[
    'a', 'e', 'i', 'o', 'u', 'y', 'à', 'â', 'è', 'é', 'ê', 'ë', 'î', 'ï', 'ô', 'ù', 'û',
];
const OUX_ENDING: &[char] = &['b', 'h', 'j', 'l', 'n', 'p'];
const ELISION_CHAR: &[char] = &['c', 'd', 'j', 'l', 'm', 'n', 's', 't'];
const KEEP_WITH_S: &[char] = &['a', 'i', 'o', 's', 'u', 'è'];

type Among = [(&'static str, i32)];

const A_0: &Among = &[("col", -1), ("ni", 1), ("par", -1), ("tap", -1)];

const A_1: &Among = &[("", 7), ("H", 6), ("He", 4), ("Hi", 5), ("I", 1), ("U", 2), ("Y", 3)];

const A_2: &Among = &[("iqU", 3), ("abl", 3), ("Ièr", 4), ("ièr", 4), ("eus", 2), ("iv", 1)];

const A_3: &Among = &[("ic", 2), ("abil", 1), ("iv", 3)];

const A_4: &Among = &[
    ("iqUe", 1),
    ("atrice", 2),
    ("ance", 1),
    ("ence", 5),
    ("logie", 3),
    ("able", 1),
    ("isme", 1),
    ("euse", 12),
    ("iste", 1),
    ("ive", 8),
    ("if", 8),
    ("usion", 4),
    ("ation", 2),
    ("ution", 4),
    ("ateur", 2),
    ("iqUes", 1),
    ("atrices", 2),
    ("ances", 1),
    ("ences", 5),
    ("logies", 3),
    ("ables", 1),
    ("ismes", 1),
    ("euses", 12),
    ("istes", 1),
    ("ives", 8),
    ("ifs", 8),
    ("usions", 4),
    ("ations", 2),
    ("utions", 4),
    ("ateurs", 2),
    ("ments", 16),
    ("ements", 6),
    ("issements", 13),
    ("ités", 7),
    ("ment", 16),
    ("ement", 6),
    ("issement", 13),
    ("amment", 14),
    ("emment", 15),
    ("aux", 10),
    ("eaux", 9),
    ("eux", 1),
    ("oux", 11),
    ("ité", 7),
];

const A_5: &Among = &[
    ("ira", 1),
    ("ie", 1),
    ("isse", 1),
    ("issante", 1),
    ("i", 1),
    ("irai", 1),
    ("ir", 1),
    ("iras", 1),
    ("ies", 1),
    ("îmes", 1),
    ("isses", 1),
    ("issantes", 1),
    ("îtes", 1),
    ("is", 1),
    ("irais", 1),
    ("issais", 1),
    ("irions", 1),
    ("issions", 1),
    ("irons", 1),
    ("issons", 1),
    ("issants", 1),
    ("it", 1),
    ("irait", 1),
    ("issait", 1),
    ("issant", 1),
    ("iraIent", 1),
    ("issaIent", 1),
    ("irent", 1),
    ("issent", 1),
    ("iront", 1),
    ("ît", 1),
    ("iriez", 1),
    ("issiez", 1),
    ("irez", 1),
    ("issez", 1),
];

const A_6: &Among = &[("al", 1), ("épl", -1), ("auv", -1)];

const A_7: &Among = &[
    ("a", 3),
    ("era", 2),
    ("aise", 4),
    ("asse", 3),
    ("ante", 3),
    ("ée", 2),
    ("ai", 3),
    ("erai", 2),
    ("er", 2),
    ("as", 3),
    ("eras", 2),
    ("âmes", 3),
    ("aises", 4),
    ("asses", 3),
    ("antes", 3),
    ("âtes", 3),
    ("ées", 2),
    ("ais", 4),
    ("eais", 2),
    ("erais", 2),
    ("ions", 1),
    ("erions", 2),
    ("assions", 3),
    ("erons", 2),
    ("ants", 3),
    ("és", 2),
    ("ait", 3),
    ("erait", 2),
    ("ant", 3),
    ("aIent", 3),
    ("eraIent", 2),
    ("èrent", 2),
    ("assent", 3),
    ("eront", 2),
    ("ât", 3),
    ("ez", 2),
    ("iez", 2),
    ("eriez", 2),
    ("assiez", 3),
    ("erez", 2),
    ("é", 2),
];

const A_8: &Among = &[("e", 3), ("Ière", 2), ("ière", 2), ("ion", 1), ("Ier", 2), ("ier", 2)];

const A_9: &Among = &[("ell", -1), ("eill", -1), ("enn", -1), ("onn", -1), ("ett", -1)];

struct Env {
    buf: Vec<char>,
    cursor: usize,
    limit: usize,
    limit_backward: usize,
    bra: usize,
    ket: usize,
    p_v: usize,
    p1: usize,
    p2: usize,
}

impl Env {
    fn new(word: &str) -> Self {
        let buf: Vec<char> = word.chars().collect();
        let limit = buf.len();
        Env {
            buf,
            cursor: 0,
            limit,
            limit_backward: 0,
            bra: 0,
            ket: limit,
            p_v: 0,
            p1: 0,
            p2: 0,
        }
    }

    // ---- runtime primitives ----

    fn at(&self, i: usize) -> char {
        self.buf[i]
    }

    fn in_grouping(&mut self, set: &[char]) -> bool {
        if self.cursor >= self.limit || !set.contains(&self.at(self.cursor)) {
            return false;
        }
        self.cursor += 1;
        true
    }

    fn in_grouping_b(&mut self, set: &[char]) -> bool {
        if self.cursor <= self.limit_backward || !set.contains(&self.at(self.cursor - 1)) {
            return false;
        }
        self.cursor -= 1;
        true
    }

    fn out_grouping_b(&mut self, set: &[char]) -> bool {
        if self.cursor <= self.limit_backward || set.contains(&self.at(self.cursor - 1)) {
            return false;
        }
        self.cursor -= 1;
        true
    }

    /// Advances to the next character in `set` without consuming it.
    fn go_out_grouping(&mut self, set: &[char]) -> bool {
        while self.cursor < self.limit {
            if set.contains(&self.at(self.cursor)) {
                return true;
            }
            self.cursor += 1;
        }
        false
    }

    /// Advances to the next character not in `set` without consuming it.
    fn go_in_grouping(&mut self, set: &[char]) -> bool {
        while self.cursor < self.limit {
            if !set.contains(&self.at(self.cursor)) {
                return true;
            }
            self.cursor += 1;
        }
        false
    }

    fn eq_char(&mut self, c: char) -> bool {
        if self.cursor >= self.limit || self.at(self.cursor) != c {
            return false;
        }
        self.cursor += 1;
        true
    }

    fn eq_char_b(&mut self, c: char) -> bool {
        if self.cursor <= self.limit_backward || self.at(self.cursor - 1) != c {
            return false;
        }
        self.cursor -= 1;
        true
    }

    fn eq_s(&mut self, s: &str) -> bool {
        let mut i = self.cursor;
        for c in s.chars() {
            if i >= self.limit || self.at(i) != c {
                return false;
            }
            i += 1;
        }
        self.cursor = i;
        true
    }

    fn eq_s_b(&mut self, s: &str) -> bool {
        let mut i = self.cursor;
        for c in s.chars().rev() {
            if i <= self.limit_backward || self.at(i - 1) != c {
                return false;
            }
            i -= 1;
        }
        self.cursor = i;
        true
    }

    /// Longest entry of `among` matching forward from the cursor.
    fn find_among(&mut self, among: &Among) -> i32 {
        let mut best: Option<(usize, i32)> = None;
        for &(s, result) in among {
            let start = self.cursor;
            let mut i = start;
            let mut ok = true;
            for c in s.chars() {
                if i >= self.limit || self.at(i) != c {
                    ok = false;
                    break;
                }
                i += 1;
            }
            if ok && best.is_none_or(|(len, _)| i - start > len) {
                best = Some((i - start, result));
            }
        }
        match best {
            Some((len, result)) => {
                self.cursor += len;
                result
            }
            None => 0,
        }
    }

    /// Longest entry of `among` matching backward from the cursor.
    fn find_among_b(&mut self, among: &Among) -> i32 {
        let mut best: Option<(usize, i32)> = None;
        for &(s, result) in among {
            let end = self.cursor;
            let mut i = end;
            let mut ok = true;
            for c in s.chars().rev() {
                if i <= self.limit_backward || self.at(i - 1) != c {
                    ok = false;
                    break;
                }
                i -= 1;
            }
            if ok && best.is_none_or(|(len, _)| end - i > len) {
                best = Some((end - i, result));
            }
        }
        match best {
            Some((len, result)) => {
                self.cursor -= len;
                result
            }
            None => 0,
        }
    }

    fn replace(&mut self, from: usize, to: usize, s: &str) {
        let repl: Vec<char> = s.chars().collect();
        let adjustment = repl.len() as isize - (to - from) as isize;
        self.buf.splice(from..to, repl);
        self.limit = (self.limit as isize + adjustment) as usize;
        if self.cursor >= to {
            self.cursor = (self.cursor as isize + adjustment) as usize;
        } else if self.cursor > from {
            self.cursor = from;
        }
    }

    fn slice_from(&mut self, s: &str) {
        debug_assert!(self.bra <= self.ket && self.ket <= self.limit);
        self.replace(self.bra, self.ket, s);
        self.ket = self.bra + s.chars().count();
    }

    fn slice_del(&mut self) {
        self.slice_from("");
    }

    fn back(&mut self, from_end: usize) {
        self.cursor = self.limit - from_end;
    }

    fn tail_len(&self) -> usize {
        self.limit - self.cursor
    }

    // ---- routines ----

    fn r_elisions(&mut self) -> bool {
        self.bra = self.cursor;
        if !self.in_grouping(ELISION_CHAR) && !self.eq_s("qu") {
            return false;
        }
        if !self.eq_char('\'') {
            return false;
        }
        self.ket = self.cursor;
        if self.cursor >= self.limit {
            return false;
        }
        self.slice_del();
        true
    }

    fn prelude_step(&mut self) -> bool {
        let v3 = self.cursor;
        // vowel-adjacent u/i/y
        if self.in_grouping(VOWELS) {
            self.bra = self.cursor;
            let v4 = self.cursor;
            if self.eq_char('u') {
                self.ket = self.cursor;
                if self.in_grouping(VOWELS) {
                    self.slice_from("U");
                    return true;
                }
            }
            self.cursor = v4;
            if self.eq_char('i') {
                self.ket = self.cursor;
                if self.in_grouping(VOWELS) {
                    self.slice_from("I");
                    return true;
                }
            }
            self.cursor = v4;
            if self.eq_char('y') {
                self.ket = self.cursor;
                self.slice_from("Y");
                return true;
            }
        }
        self.cursor = v3;
        self.bra = self.cursor;
        if self.eq_char('ë') {
            self.ket = self.cursor;
            self.slice_from("He");
            return true;
        }
        self.cursor = v3;
        self.bra = self.cursor;
        if self.eq_char('ï') {
            self.ket = self.cursor;
            self.slice_from("Hi");
            return true;
        }
        self.cursor = v3;
        self.bra = self.cursor;
        if self.eq_char('y') {
            self.ket = self.cursor;
            if self.in_grouping(VOWELS) {
                self.slice_from("Y");
                return true;
            }
        }
        self.cursor = v3;
        if !self.eq_char('q') {
            return false;
        }
        self.bra = self.cursor;
        if !self.eq_char('u') {
            return false;
        }
        self.ket = self.cursor;
        self.slice_from("U");
        true
    }

    fn r_prelude(&mut self) {
        // repeat goto (...)
        loop {
            let v1 = self.cursor;
            let found = loop {
                let v2 = self.cursor;
                if self.prelude_step() {
                    self.cursor = v2;
                    break true;
                }
                self.cursor = v2;
                if self.cursor >= self.limit {
                    break false;
                }
                self.cursor += 1;
            };
            if !found {
                self.cursor = v1;
                break;
            }
        }
    }

    fn r_mark_regions(&mut self) {
        self.p_v = self.limit;
        self.p1 = self.limit;
        self.p2 = self.limit;

        let v1 = self.cursor;
        'rv: {
            let v2 = self.cursor;
            'alt: {
                if self.in_grouping(VOWELS) && self.in_grouping(VOWELS) && self.cursor < self.limit {
                    self.cursor += 1;
                    break 'alt;
                }
                self.cursor = v2;
                let among = self.find_among(A_0);
                if among != 0 && (among != 1 || self.in_grouping(VOWELS)) {
                    break 'alt;
                }
                self.cursor = v2;
                if self.cursor >= self.limit {
                    break 'rv;
                }
                self.cursor += 1;
                if !self.go_out_grouping(VOWELS) {
                    break 'rv;
                }
                self.cursor += 1;
            }
            self.p_v = self.cursor;
        }
        self.cursor = v1;

        let v3 = self.cursor;
        'r: {
            if !self.go_out_grouping(VOWELS) {
                break 'r;
            }
            self.cursor += 1;
            if !self.go_in_grouping(VOWELS) {
                break 'r;
            }
            self.cursor += 1;
            self.p1 = self.cursor;
            if !self.go_out_grouping(VOWELS) {
                break 'r;
            }
            self.cursor += 1;
            if !self.go_in_grouping(VOWELS) {
                break 'r;
            }
            self.cursor += 1;
            self.p2 = self.cursor;
        }
        self.cursor = v3;
    }

    fn r_postlude(&mut self) {
        loop {
            let v1 = self.cursor;
            self.bra = self.cursor;
            let among = self.find_among(A_1);
            self.ket = self.cursor;
            match among {
                1 => self.slice_from("i"),
                2 => self.slice_from("u"),
                3 => self.slice_from("y"),
                4 => self.slice_from("ë"),
                5 => self.slice_from("ï"),
                6 => self.slice_del(),
                _ => {
                    if self.cursor >= self.limit {
                        self.cursor = v1;
                        break;
                    }
                    self.cursor += 1;
                }
            }
        }
    }

    fn r_rv(&self) -> bool {
        self.p_v <= self.cursor
    }

    fn r_r1(&self) -> bool {
        self.p1 <= self.cursor
    }

    fn r_r2(&self) -> bool {
        self.p2 <= self.cursor
    }

    /// `R2 and delete` or else `<- replacement`.
    fn del_in_r2_or(&mut self, replacement: &str) {
        if self.r_r2() {
            self.slice_del();
        } else {
            self.slice_from(replacement);
        }
    }

    fn r_standard_suffix(&mut self) -> bool {
        self.ket = self.cursor;
        let among = self.find_among_b(A_4);
        if among == 0 {
            return false;
        }
        self.bra = self.cursor;
        match among {
            1 => {
                if !self.r_r2() {
                    return false;
                }
                self.slice_del();
            }
            2 => {
                if !self.r_r2() {
                    return false;
                }
                self.slice_del();
                let v1 = self.tail_len();
                self.ket = self.cursor;
                if self.eq_s_b("ic") {
                    self.bra = self.cursor;
                    self.del_in_r2_or("iqU");
                } else {
                    self.back(v1);
                }
            }
            3 => {
                if !self.r_r2() {
                    return false;
                }
                self.slice_from("log");
            }
            4 => {
                if !self.r_r2() {
                    return false;
                }
                self.slice_from("u");
            }
            5 => {
                if !self.r_r2() {
                    return false;
                }
                self.slice_from("ent");
            }
            6 => {
                if !self.r_rv() {
                    return false;
                }
                self.slice_del();
                let v3 = self.tail_len();
                'try_: {
                    self.ket = self.cursor;
                    let inner = self.find_among_b(A_2);
                    if inner == 0 {
                        self.back(v3);
                        break 'try_;
                    }
                    self.bra = self.cursor;
                    match inner {
                        1 => {
                            if !self.r_r2() {
                                self.back(v3);
                                break 'try_;
                            }
                            self.slice_del();
                            self.ket = self.cursor;
                            if !self.eq_s_b("at") {
                                self.back(v3);
                                break 'try_;
                            }
                            self.bra = self.cursor;
                            if !self.r_r2() {
                                self.back(v3);
                                break 'try_;
                            }
                            self.slice_del();
                        }
                        2 => {
                            if self.r_r2() {
                                self.slice_del();
                            } else {
                                if !self.r_r1() {
                                    self.back(v3);
                                    break 'try_;
                                }
                                self.slice_from("eux");
                            }
                        }
                        3 => {
                            if !self.r_r2() {
                                self.back(v3);
                                break 'try_;
                            }
                            self.slice_del();
                        }
                        _ => {
                            if !self.r_rv() {
                                self.back(v3);
                                break 'try_;
                            }
                            self.slice_from("i");
                        }
                    }
                }
            }
            7 => {
                if !self.r_r2() {
                    return false;
                }
                self.slice_del();
                let v5 = self.tail_len();
                'try_: {
                    self.ket = self.cursor;
                    let inner = self.find_among_b(A_3);
                    if inner == 0 {
                        self.back(v5);
                        break 'try_;
                    }
                    self.bra = self.cursor;
                    match inner {
                        1 => self.del_in_r2_or("abl"),
                        2 => self.del_in_r2_or("iqU"),
                        _ => {
                            if !self.r_r2() {
                                self.back(v5);
                                break 'try_;
                            }
                            self.slice_del();
                        }
                    }
                }
            }
            8 => {
                if !self.r_r2() {
                    return false;
                }
                self.slice_del();
                let v8 = self.tail_len();
                'try_: {
                    self.ket = self.cursor;
                    if !self.eq_s_b("at") {
                        self.back(v8);
                        break 'try_;
                    }
                    self.bra = self.cursor;
                    if !self.r_r2() {
                        self.back(v8);
                        break 'try_;
                    }
                    self.slice_del();
                    self.ket = self.cursor;
                    if !self.eq_s_b("ic") {
                        self.back(v8);
                        break 'try_;
                    }
                    self.bra = self.cursor;
                    self.del_in_r2_or("iqU");
                }
            }
            9 => self.slice_from("eau"),
            10 => {
                if !self.r_r1() {
                    return false;
                }
                self.slice_from("al");
            }
            11 => {
                if !self.in_grouping_b(OUX_ENDING) {
                    return false;
                }
                self.slice_from("ou");
            }
            12 => {
                if self.r_r2() {
                    self.slice_del();
                } else {
                    if !self.r_r1() {
                        return false;
                    }
                    self.slice_from("eux");
                }
            }
            13 => {
                if !self.r_r1() {
                    return false;
                }
                if !self.out_grouping_b(VOWELS) {
                    return false;
                }
                self.slice_del();
            }
            14 => {
                if !self.r_rv() {
                    return false;
                }
                self.slice_from("ant");
                return false;
            }
            15 => {
                if !self.r_rv() {
                    return false;
                }
                self.slice_from("ent");
                return false;
            }
            _ => {
                let v11 = self.tail_len();
                if !self.in_grouping_b(VOWELS) {
                    return false;
                }
                if !self.r_rv() {
                    return false;
                }
                self.back(v11);
                self.slice_del();
                return false;
            }
        }
        true
    }

    fn r_i_verb_suffix(&mut self) -> bool {
        if self.cursor < self.p_v {
            return false;
        }
        let saved = self.limit_backward;
        self.limit_backward = self.p_v;
        self.ket = self.cursor;
        if self.find_among_b(A_5) == 0 {
            self.limit_backward = saved;
            return false;
        }
        self.bra = self.cursor;
        if self.eq_char_b('H') {
            self.limit_backward = saved;
            return false;
        }
        if !self.out_grouping_b(VOWELS) {
            self.limit_backward = saved;
            return false;
        }
        self.slice_del();
        self.limit_backward = saved;
        true
    }

    fn r_verb_suffix(&mut self) -> bool {
        if self.cursor < self.p_v {
            return false;
        }
        let saved = self.limit_backward;
        self.limit_backward = self.p_v;
        self.ket = self.cursor;
        let among = self.find_among_b(A_7);
        if among == 0 {
            self.limit_backward = saved;
            return false;
        }
        self.bra = self.cursor;
        self.limit_backward = saved;
        match among {
            1 => {
                if !self.r_r2() {
                    return false;
                }
                self.slice_del();
            }
            2 => self.slice_del(),
            3 => {
                let v3 = self.tail_len();
                if self.eq_char_b('e') && self.r_rv() {
                    self.bra = self.cursor;
                } else {
                    self.back(v3);
                }
                self.slice_del();
            }
            _ => {
                let v4 = self.tail_len();
                let inner = self.find_among_b(A_6);
                if inner != 0 {
                    if inner != 1 {
                        return false;
                    }
                    // `al` blocks the deletion only when exactly one character precedes it
                    if self.cursor > self.limit_backward {
                        self.cursor -= 1;
                        if self.cursor <= self.limit_backward {
                            return false;
                        }
                    }
                }
                self.back(v4);
                self.slice_del();
            }
        }
        true
    }

    fn r_residual_suffix(&mut self) -> bool {
        let v1 = self.tail_len();
        'try_: {
            self.ket = self.cursor;
            if !self.eq_char_b('s') {
                self.back(v1);
                break 'try_;
            }
            self.bra = self.cursor;
            let v2 = self.tail_len();
            if !self.eq_s_b("Hi") && !self.out_grouping_b(KEEP_WITH_S) {
                self.back(v1);
                break 'try_;
            }
            self.back(v2);
            self.slice_del();
        }
        if self.cursor < self.p_v {
            return false;
        }
        let saved = self.limit_backward;
        self.limit_backward = self.p_v;
        self.ket = self.cursor;
        let among = self.find_among_b(A_8);
        if among == 0 {
            self.limit_backward = saved;
            return false;
        }
        self.bra = self.cursor;
        match among {
            1 => {
                if !self.r_r2() {
                    self.limit_backward = saved;
                    return false;
                }
                if !self.eq_char_b('s') && !self.eq_char_b('t') {
                    self.limit_backward = saved;
                    return false;
                }
                self.slice_del();
            }
            2 => self.slice_from("i"),
            _ => self.slice_del(),
        }
        self.limit_backward = saved;
        true
    }

    fn r_un_double(&mut self) -> bool {
        let v1 = self.tail_len();
        if self.find_among_b(A_9) == 0 {
            return false;
        }
        self.back(v1);
        self.ket = self.cursor;
        if self.cursor <= self.limit_backward {
            return false;
        }
        self.cursor -= 1;
        self.bra = self.cursor;
        self.slice_del();
        true
    }

    fn r_un_accent(&mut self) -> bool {
        let mut non_vowels = 0;
        while self.out_grouping_b(VOWELS) {
            non_vowels += 1;
        }
        if non_vowels == 0 {
            return false;
        }
        self.ket = self.cursor;
        if !self.eq_char_b('é') && !self.eq_char_b('è') {
            return false;
        }
        self.bra = self.cursor;
        self.slice_from("e");
        true
    }

    fn stem(&mut self) {
        let v1 = self.cursor;
        self.r_elisions();
        self.cursor = v1;
        let v2 = self.cursor;
        self.r_prelude();
        self.cursor = v2;
        self.r_mark_regions();

        self.limit_backward = self.cursor;
        self.cursor = self.limit;

        let v3 = self.tail_len();
        'suffixes: {
            let v4 = self.tail_len();
            'main: {
                let v5 = self.tail_len();
                let v6 = self.tail_len();
                if !self.r_standard_suffix() {
                    self.back(v6);
                    if !self.r_i_verb_suffix() {
                        self.back(v6);
                        if !self.r_verb_suffix() {
                            break 'main;
                        }
                    }
                }
                self.back(v5);
                let v7 = self.tail_len();
                self.ket = self.cursor;
                let v8 = self.tail_len();
                if self.eq_char_b('Y') {
                    self.bra = self.cursor;
                    self.slice_from("i");
                } else {
                    self.back(v8);
                    if self.eq_char_b('ç') {
                        self.bra = self.cursor;
                        self.slice_from("c");
                    } else {
                        self.back(v7);
                    }
                }
                break 'suffixes;
            }
            self.back(v4);
            self.r_residual_suffix();
        }
        self.back(v3);

        let v9 = self.tail_len();
        self.r_un_double();
        self.back(v9);
        let v10 = self.tail_len();
        self.r_un_accent();
        self.back(v10);

        self.cursor = self.limit_backward;
        let v11 = self.cursor;
        self.r_postlude();
        self.cursor = v11;
    }
}

#[cfg(test)]
mod tests {
    use super::stem;

    #[test]
    fn plural_feminine_agent_noun() {
        assert_eq!(stem("chanteuses"), "chanteux");
    }

    #[test]
    fn short_and_empty_words() {
        assert_eq!(stem(""), "");
        assert_eq!(stem("a"), "a");
        assert_eq!(stem("été"), "été");
    }

    #[test]
    fn elision_is_stripped() {
        assert_eq!(stem("l'homme"), stem("homme"));
    }
}
