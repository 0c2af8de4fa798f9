// DOM assembly and paint. Everything interesting happens in the pure
// modules; this file only mirrors a ViewModel into elements and forwards
// pointer events.

import { KEYPAD_LAYOUT } from "./keypad.js";
import type { HoldGate } from "./keypad.js";
import type { ViewModel } from "./view.js";

export interface PanelRefs {
  banner: HTMLElement;
  lcd: HTMLPreElement;
  motor: HTMLElement;
  tankBar: HTMLElement;
  tankLabel: HTMLElement;
  clock: HTMLElement;
  error: HTMLElement;
  keys: HTMLButtonElement[];
  slider: HTMLInputElement;
  sliderLabel: HTMLElement;
  resetButton: HTMLButtonElement;
}

export function buildPanel(root: HTMLElement, gate: HoldGate): PanelRefs {
  root.innerHTML = `
    <div class="banner" id="banner" hidden></div>
    <div class="device">
      <pre class="lcd" id="lcd"></pre>
      <div class="statusline">
        <span class="motor" id="motor"></span>
        <span class="clock" id="clock"></span>
      </div>
      <div class="tank">
        <div class="tank-bar" id="tank-bar"></div>
        <span class="tank-label" id="tank-label"></span>
      </div>
      <div class="keypad" id="keypad"></div>
      <div class="controls">
        <label>speed ×<span id="slider-label">1.0</span>
          <input id="slider" type="range" min="0.1" max="100" step="0.1" value="1">
        </label>
        <button id="reset" type="button">reset device</button>
      </div>
      <div class="error" id="error"></div>
    </div>`;

  const byId = <T extends HTMLElement>(id: string): T =>
    root.querySelector<T>(`#${id}`)!;

  const keypad = byId<HTMLElement>("keypad");
  const keys: HTMLButtonElement[] = [];
  for (const row of KEYPAD_LAYOUT) {
    for (const cap of row) {
      const button = document.createElement("button");
      button.type = "button";
      button.className = "key";
      button.dataset.key = cap.label;
      button.innerHTML = cap.caption
        ? `${cap.label}<small>${cap.caption}</small>`
        : cap.label;
      button.addEventListener("pointerdown", (event) => {
        event.preventDefault();
        gate.press(cap.label);
      });
      const up = () => gate.release(cap.label);
      button.addEventListener("pointerup", up);
      button.addEventListener("pointerleave", up);
      button.addEventListener("pointercancel", up);
      keypad.appendChild(button);
      keys.push(button);
    }
  }

  return {
    banner: byId("banner"),
    lcd: byId<HTMLPreElement>("lcd"),
    motor: byId("motor"),
    tankBar: byId("tank-bar"),
    tankLabel: byId("tank-label"),
    clock: byId("clock"),
    error: byId("error"),
    keys,
    slider: byId<HTMLInputElement>("slider"),
    sliderLabel: byId("slider-label"),
    resetButton: byId<HTMLButtonElement>("reset"),
  };
}

export function paint(refs: PanelRefs, vm: ViewModel): void {
  refs.banner.hidden = vm.banner === null;
  refs.banner.textContent = vm.banner ?? "";
  // textContent keeps the rows exactly as sent, trailing blanks included.
  refs.lcd.textContent = vm.rows.join("\n");
  refs.motor.textContent = vm.motorLabel;
  refs.motor.classList.toggle("on", vm.motorOn);
  refs.tankBar.style.width = (vm.tankFraction * 100).toFixed(1) + "%";
  refs.tankLabel.textContent = vm.tankLabel;
  refs.clock.textContent = vm.clockLabel;
  refs.error.textContent = vm.errorLabel ?? "";
  for (const key of refs.keys) key.disabled = !vm.keypadEnabled;
  refs.resetButton.disabled = !vm.keypadEnabled;
  refs.slider.disabled = !vm.keypadEnabled;
  refs.sliderLabel.textContent = vm.timescale.toFixed(1);
}
