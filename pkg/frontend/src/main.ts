import { ApiClient, ApiError } from "./api";
import { ChatView } from "./chat";
import { renderDashboard } from "./dashboard";

const client = new ApiClient("");

const app = document.getElementById("app");
if (app) {
  const tabs = document.createElement("div");
  tabs.className = "tabs";
  const chatTab = document.createElement("button");
  chatTab.textContent = "Chat";
  const dashTab = document.createElement("button");
  dashTab.textContent = "Benchmark";
  tabs.append(chatTab, dashTab);

  const chatRoot = new ChatView(client).root;
  const dashRoot = document.createElement("div");
  dashRoot.className = "dashboard";

  const showChat = () => {
    chatRoot.style.display = "";
    dashRoot.style.display = "none";
    chatTab.classList.add("active");
    dashTab.classList.remove("active");
  };
  const showDash = async () => {
    chatRoot.style.display = "none";
    dashRoot.style.display = "";
    dashTab.classList.add("active");
    chatTab.classList.remove("active");
    try {
      renderDashboard(dashRoot, await client.fetchReport());
    } catch (error) {
      if (error instanceof ApiError && error.status === 404) {
        renderDashboard(dashRoot, null);
      } else {
        renderDashboard(dashRoot, undefined);
      }
    }
  };
  chatTab.addEventListener("click", showChat);
  dashTab.addEventListener("click", () => void showDash());

  app.append(tabs, chatRoot, dashRoot);
  showChat();
}
